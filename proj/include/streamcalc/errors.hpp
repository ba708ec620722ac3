#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace streamcalc {

// Base of every error this library throws. kind() is the stable diagnostic
// token the CLI prints and tests match on.
class error : public std::runtime_error {
public:
    error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

// Static errors: rejected before evaluation starts. CLI exit code 2.
class static_error : public error {
    using error::error;
};

class parse_error : public static_error {
public:
    parse_error(std::size_t line, std::size_t column, const std::string& msg)
        : static_error("ParseError",
                       "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class arity_error : public static_error {
public:
    explicit arity_error(const std::string& msg) : static_error("ArityError", msg) {}
};

class unknown_function : public static_error {
public:
    explicit unknown_function(const std::string& msg) : static_error("UnknownFunction", msg) {}
};

class unknown_identifier : public static_error {
public:
    explicit unknown_identifier(const std::string& msg) : static_error("UnknownIdentifier", msg) {}
};

class duplicate_declaration : public static_error {
public:
    explicit duplicate_declaration(const std::string& msg) : static_error("DuplicateDeclaration", msg) {}
};

class ambiguous_sort : public static_error {
public:
    explicit ambiguous_sort(const std::string& msg) : static_error("AmbiguousSort", msg) {}
};

class sort_error : public static_error {
public:
    explicit sort_error(const std::string& msg) : static_error("SortError", msg) {}
};

// Runtime errors: raised during evaluation, indexing or canonicalization.
// CLI exit code 1.
class runtime_fault : public error {
    using error::error;
};

class fuel_exhausted : public runtime_fault {
public:
    explicit fuel_exhausted(const std::string& call_name, std::uint64_t budget)
        : runtime_fault("FuelExhausted", "call budget of " + std::to_string(budget) +
                                             " expansions exhausted at first-time call of " + call_name) {}
};

class not_well_defined : public runtime_fault {
public:
    not_well_defined(const std::string& binding_var, const std::string& binding_text,
                     const std::string& witness_var, long long balance)
        : runtime_fault("NotWellDefined",
                        "binding " + binding_var + " = " + binding_text +
                            " rejected: variable " + witness_var + " re-entered with constructor balance " +
                            std::to_string(balance)),
          binding_var_(binding_var),
          binding_text_(binding_text),
          witness_var_(witness_var),
          balance_(balance) {}
    const std::string& binding_var() const { return binding_var_; }
    const std::string& binding_text() const { return binding_text_; }
    const std::string& witness_var() const { return witness_var_; }
    long long balance() const { return balance_; }

private:
    std::string binding_var_;
    std::string binding_text_;
    std::string witness_var_;
    long long balance_;
};

class undefined_variable : public runtime_fault {
public:
    explicit undefined_variable(const std::string& var)
        : runtime_fault("UndefinedVariable", "variable " + var + " is not bound in the environment"),
          var_(var) {}
    const std::string& var() const { return var_; }

private:
    std::string var_;
};

class division_by_zero : public runtime_fault {
public:
    division_by_zero() : runtime_fault("DivisionByZero", "division by zero") {}
    explicit division_by_zero(const std::string& ctx)
        : runtime_fault("DivisionByZero", "division by zero " + ctx) {}
};

class non_natural_index : public runtime_fault {
public:
    explicit non_natural_index(const std::string& value_text)
        : runtime_fault("NonNaturalIndex", "stream index must be a natural number, got " + value_text) {}
};

class open_capsule : public runtime_fault {
public:
    explicit open_capsule(const std::string& var)
        : runtime_fault("OpenCapsule", "capsule has a free variable " + var) {}
};

class incompatible_environments : public runtime_fault {
public:
    explicit incompatible_environments(const std::string& var)
        : runtime_fault("IncompatibleEnvironments",
                        "environments disagree on variable " + var) {}
};

class divergence_error : public runtime_fault {
public:
    divergence_error(const std::string& var, std::uint64_t pending, std::uint64_t reentry)
        : runtime_fault("Divergence", "element access diverges: variable " + var + " re-entered at index " +
                                          std::to_string(reentry) + " while index " + std::to_string(pending) +
                                          " is still pending") {}
};

}  // namespace streamcalc
