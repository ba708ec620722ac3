#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "streamcalc/indexing.hpp"
#include "streamcalc/value.hpp"

namespace streamcalc {

// Length-n approximation of a stream: position i is either known exactly or
// not yet determined.
using partial_prefix = std::vector<std::optional<rational>>;
using prefix_assignment = std::map<std::string, partial_prefix>;

partial_prefix unknown_prefix(std::size_t n);

// One application of the prefix equations: cons shifts right and fills
// position 0; tail shifts left and loses the last position; pointwise is
// positionwise and strict in unknowns. Every variable of sv must be assigned.
partial_prefix sem_eval_prefix(const stream_value_ptr& sv, const prefix_assignment& a,
                               std::size_t n);

// Least fixpoint of the prefix equations of env over the flat domain,
// starting from all-unknown for bound variables and `boundary` for free ones.
// Known positions never change once set; rounds run on a frozen snapshot.
// `observer`, when given, sees the assignment after every round.
prefix_assignment kleene_prefix(const environment& env, const prefix_assignment& boundary,
                                std::size_t n,
                                const std::function<void(const prefix_assignment&)>& observer = {});

// Do two closed, well-defined capsules agree on their first n elements?
bool prefix_equiv(const capsule& a, const capsule& b, std::size_t n);

// Reference sequences with known closed forms.
enum class closed_form_kind {
    nat,         // i
    fib,         // 0 1 1 2 3 ...
    fact,        // i!
    pow,         // k^i
    nat_to_pow,  // i^k
    sum_nat,     // i(i+1)/2
    aggr3_nat,   // 3i+3
    expn,        // sum_{j<=i} k^j / j!
};

rational closed_form(closed_form_kind kind, const rational& k, index_t i);

}  // namespace streamcalc
