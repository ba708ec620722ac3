#pragma once

#include <string>

#include "streamcalc/ast.hpp"
#include "streamcalc/value.hpp"

namespace streamcalc {

// Parses a whole source file: zero or more `name(params) = body` clauses,
// whitespace-separated, with // line comments. Inside a body, an applied
// identifier is an index access when it names a parameter and a call
// otherwise. Does not validate; call validate() on the result.
program parse_program(const std::string& source);

// Parses a single expression. No parameters are in scope, so every applied
// identifier parses as a call and every bare identifier as a variable.
expr_ptr parse_expr(const std::string& source);

// Parses the textual capsule form produced by render_capsule:
// either a plain expression, or `expr where { x = expr, ... }`.
// Expressions in value position must denote values (numeric constants fold).
capsule parse_capsule(const std::string& source);

// Converts an expression that denotes a stream value into that value.
// Numeric subterms in head position are constant-folded; anything outside
// the value grammar (calls, conditionals, index accesses) is rejected.
stream_value_ptr expr_to_stream_value(const expr_ptr& e);

// Converts an expression that denotes any value: numeric constants fold,
// boolean literals convert, everything else must be a stream value.
value expr_to_value(const expr_ptr& e);

}  // namespace streamcalc
