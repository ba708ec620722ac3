#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "streamcalc/rational.hpp"

namespace streamcalc {

enum class arith_op { add, sub, mul, div };

const char* arith_op_symbol(arith_op op);           // "+" "-" "*" "/"
const char* pointwise_op_symbol(arith_op op);       // "[+]" "[-]" "[*]" "[/]"
rational apply_arith(arith_op op, const rational& l, const rational& r);

struct stream_value;
using stream_value_ptr = std::shared_ptr<const stream_value>;

// Stream values are symbolic: constructors are applied, never reduced.
// A variable is itself a value; cycles close through the environment.
struct sv_var {
    std::string name;
};
struct sv_cons {
    rational head;
    stream_value_ptr tail;
};
struct sv_tail {
    stream_value_ptr arg;
};
struct sv_pointwise {
    arith_op op;
    stream_value_ptr left;
    stream_value_ptr right;
};

struct stream_value {
    std::variant<sv_var, sv_cons, sv_tail, sv_pointwise> node;
};

stream_value_ptr make_sv_var(std::string name);
stream_value_ptr make_sv_cons(rational head, stream_value_ptr tail);
stream_value_ptr make_sv_tail(stream_value_ptr arg);
stream_value_ptr make_sv_pointwise(arith_op op, stream_value_ptr left, stream_value_ptr right);

// Structural equality, variables compared by name.
bool sv_equal(const stream_value_ptr& a, const stream_value_ptr& b);

// A value is a rational, a boolean, or a stream value.
struct value {
    std::variant<rational, bool, stream_value_ptr> v;

    bool is_number() const { return std::holds_alternative<rational>(v); }
    bool is_boolean() const { return std::holds_alternative<bool>(v); }
    bool is_stream() const { return std::holds_alternative<stream_value_ptr>(v); }

    const rational& number() const { return std::get<rational>(v); }
    bool boolean() const { return std::get<bool>(v); }
    const stream_value_ptr& stream() const { return std::get<stream_value_ptr>(v); }
};

// Exact on numbers and booleans, structural on streams, false across kinds.
// The environment parameter is unused by the syntactic equivalence but kept
// so richer equivalences could be slotted in without changing call sites.
bool value_equiv(const value& a, const value& b, const std::map<std::string, stream_value_ptr>& env);

using environment = std::map<std::string, stream_value_ptr>;

// Union of two environments; bindings for the same variable must be
// structurally equal, otherwise incompatible_environments is thrown.
environment env_join(const environment& a, const environment& b);

// Evaluation result: a possibly-open value plus the bindings that close it.
struct capsule {
    value val;
    environment env;
};

struct evaluated_call {
    std::string callee;
    std::vector<value> args;
};

// Pending first-time calls on the current derivation path, each mapped to the
// fresh variable that will name its result.
using call_trace = std::vector<std::pair<evaluated_call, std::string>>;

}  // namespace streamcalc
