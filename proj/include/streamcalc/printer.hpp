#pragma once

#include <string>

#include "streamcalc/ast.hpp"
#include "streamcalc/value.hpp"

namespace streamcalc {

// Concrete-syntax renderings. Output re-parses to a structurally equal term.
std::string render_expr(const expr_ptr& e);
std::string render_stream_value(const stream_value_ptr& sv);
std::string render_value(const value& v);
std::string render_program(const program& p);

// `v` alone when no binding is reachable from the value, otherwise
// `v where { x1 = sv1, x2 = sv2, ... }` with bindings listed in the order
// they are first reached from the value.
std::string render_capsule(const capsule& c);

// {"value": "<expr>", "env": {"x": "<expr>", ...}} — env restricted to the
// bindings reachable from the value, serialized as one line.
std::string capsule_to_json(const capsule& c);
capsule capsule_from_json(const std::string& text);

}  // namespace streamcalc
