#pragma once

#include <map>
#include <optional>
#include <string>

#include "streamcalc/value.hpp"

namespace streamcalc {

// Per-variable constructor balance along the current path: cons adds one to
// every open counter, tail removes one, pointwise shares the map with both
// operands. Signed: tails may drive a balance below zero.
using counter_map = std::map<std::string, long long>;

// Structural traversal of `sv` under `env` with open counters `m`:
// a variable already counted must have a strictly positive balance; an
// unbound variable is fine; a bound, uncounted variable opens a zero counter
// and descends into its binding.
bool wf_visit(const environment& env, const stream_value_ptr& sv, counter_map m);

// Would binding var = sv be well defined in env? Precondition: var unbound
// in env. Equivalent to wf_visit(env + {var = sv}, variable var, {}).
bool check_wf(const environment& env, const std::string& var, const stream_value_ptr& sv);

// Is the existing binding of `var` well defined in `env`?
bool binding_well_defined(const environment& env, const std::string& var);

struct wf_failure {
    std::string var;        // variable re-entered with non-positive balance
    long long balance;
};

// Trace mode: the first failing re-entry on the traversal order, or nullopt
// when the check succeeds.
std::optional<wf_failure> check_wf_failure(const environment& env, const std::string& var,
                                           const stream_value_ptr& sv);

}  // namespace streamcalc
