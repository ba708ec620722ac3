#pragma once

#include <vector>

#include "streamcalc/value.hpp"

namespace streamcalc {

// Renames the bindings reachable from the value to v0, v1, ... in the order
// they are first reached, drops unreachable bindings, and leaves numeric and
// boolean values untouched. Throws open_capsule if a reachable variable has
// no binding. Idempotent; two capsules are alpha-equivalent iff their
// canonical forms are structurally equal.
capsule alpha_canonicalize(const capsule& c);

// Reachable binding names in first-reached order (the canonical walk order).
std::vector<std::string> reachable_bindings(const capsule& c);

bool capsule_equal(const capsule& a, const capsule& b);          // structural
bool capsule_alpha_equal(const capsule& a, const capsule& b);    // up to renaming

}  // namespace streamcalc
