#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "streamcalc/value.hpp"

namespace streamcalc {

using index_t = std::uint64_t;

struct divergence {
    std::string var;      // variable re-entered while still pending
    index_t pending;      // smallest index still being resolved for it
    index_t reentry;      // index of the re-entry (>= pending)
};

using element_result = std::variant<rational, divergence>;

// Optional instrumentation: every variable resolution the walk performs,
// in order.
struct at_trace {
    std::vector<std::pair<std::string, index_t>> entries;
};

// Element i of sv under env, with divergence detection: re-entering a
// variable at an index >= one still pending for it cannot terminate.
// Iterative; sub-results per (variable, index) are shared within the query.
// Throws undefined_variable and division_by_zero.
element_result guarded_at(const environment& env, const stream_value_ptr& sv, index_t i,
                          at_trace* trace = nullptr);

// Same walk, but divergence is a precondition violation (the caller promised
// a well-defined input) and surfaces as divergence_error.
rational at(const environment& env, const stream_value_ptr& sv, index_t i);

// First n elements; fails fast with divergence_error on the first diverging
// position.
std::vector<rational> prefix(const environment& env, const stream_value_ptr& sv, std::size_t n);

}  // namespace streamcalc
