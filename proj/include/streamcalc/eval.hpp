#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "streamcalc/ast.hpp"
#include "streamcalc/value.hpp"

namespace streamcalc {

inline constexpr std::uint64_t default_fuel = 10000;

// Capture-free parallel substitution of parameter occurrences by values.
// Numbers and booleans embed as literals, stream values as value leaves.
expr_ptr substitute(const expr_ptr& body, const std::vector<std::string>& params,
                    const std::vector<value>& args);

// First entry of the trace whose call matches `call` up to value_equiv in
// `env`, searched most-recent-first.
std::optional<std::string> lookup_call(const call_trace& trace, const evaluated_call& call,
                                       const environment& env);

// Evaluates `e` against `p` starting from `env`. Fuel counts first-time call
// expansions; each expansion allocates a fresh result variable, evaluates the
// substituted body under the extended trace, and the resulting binding must
// pass the well-definedness check before it enters the environment. A call
// already on the trace (up to value_equiv) resolves to its pending variable
// without consuming fuel. The result environment extends `env`.
capsule evaluate(const program& p, const expr_ptr& e, const environment& env = {},
                 std::uint64_t fuel = default_fuel);

// Direct invocation of a declared function on evaluated arguments, under an
// empty trace. Same expansion rules as evaluate.
capsule invoke(const program& p, const std::string& fn, const std::vector<value>& args,
               const environment& env = {}, std::uint64_t fuel = default_fuel);

}  // namespace streamcalc
