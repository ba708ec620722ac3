#include "streamcalc/oracle.hpp"

#include <set>
#include <stdexcept>

#include "streamcalc/errors.hpp"

namespace streamcalc {

namespace {

std::optional<rational> elem(const stream_value_ptr& sv, const prefix_assignment& a,
                             std::size_t i) {
    if (const auto* v = std::get_if<sv_var>(&sv->node)) {
        auto it = a.find(v->name);
        if (it == a.end()) throw undefined_variable(v->name);
        return i < it->second.size() ? it->second[i] : std::nullopt;
    }
    if (const auto* c = std::get_if<sv_cons>(&sv->node)) {
        if (i == 0) return c->head;
        return elem(c->tail, a, i - 1);
    }
    if (const auto* t = std::get_if<sv_tail>(&sv->node)) return elem(t->arg, a, i + 1);
    const auto& p = std::get<sv_pointwise>(sv->node);
    // Strict in unknowns: division by a known zero only surfaces once the
    // dividend is known too.
    auto l = elem(p.left, a, i);
    if (!l) return std::nullopt;
    auto r = elem(p.right, a, i);
    if (!r) return std::nullopt;
    return apply_arith(p.op, *l, *r);
}

void free_vars(const stream_value_ptr& sv, const environment& env, std::set<std::string>& out) {
    if (const auto* v = std::get_if<sv_var>(&sv->node)) {
        if (env.find(v->name) == env.end()) out.insert(v->name);
    } else if (const auto* c = std::get_if<sv_cons>(&sv->node)) {
        free_vars(c->tail, env, out);
    } else if (const auto* t = std::get_if<sv_tail>(&sv->node)) {
        free_vars(t->arg, env, out);
    } else {
        const auto& p = std::get<sv_pointwise>(sv->node);
        free_vars(p.left, env, out);
        free_vars(p.right, env, out);
    }
}

}  // namespace

partial_prefix unknown_prefix(std::size_t n) { return partial_prefix(n); }

partial_prefix sem_eval_prefix(const stream_value_ptr& sv, const prefix_assignment& a,
                               std::size_t n) {
    partial_prefix out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(elem(sv, a, i));
    return out;
}

prefix_assignment kleene_prefix(const environment& env, const prefix_assignment& boundary,
                                std::size_t n,
                                const std::function<void(const prefix_assignment&)>& observer) {
    std::set<std::string> free;
    for (const auto& [_, sv] : env) free_vars(sv, env, free);

    prefix_assignment a;
    for (const auto& f : free) {
        auto it = boundary.find(f);
        if (it == boundary.end()) throw undefined_variable(f);
        partial_prefix p = it->second;
        p.resize(n);
        a.emplace(f, std::move(p));
    }
    for (const auto& [x, _] : env) a[x] = unknown_prefix(n);

    for (;;) {
        prefix_assignment next = a;
        bool changed = false;
        for (const auto& [x, sv] : env) {
            partial_prefix p = sem_eval_prefix(sv, a, n);
            partial_prefix& cur = next[x];
            for (std::size_t i = 0; i < n; ++i) {
                if (cur[i].has_value() || !p[i].has_value()) continue;
                cur[i] = std::move(p[i]);
                changed = true;
            }
        }
        if (observer) observer(next);
        a = std::move(next);
        if (!changed) return a;
    }
}

bool prefix_equiv(const capsule& a, const capsule& b, std::size_t n) {
    if (!a.val.is_stream() || !b.val.is_stream()) return value_equiv(a.val, b.val, {});
    std::vector<rational> pa = prefix(a.env, a.val.stream(), n);
    std::vector<rational> pb = prefix(b.env, b.val.stream(), n);
    return pa == pb;
}

rational closed_form(closed_form_kind kind, const rational& k, index_t i) {
    switch (kind) {
        case closed_form_kind::nat:
            return rational(static_cast<long>(i));
        case closed_form_kind::fib: {
            rational a(0), b(1);
            for (index_t j = 0; j < i; ++j) {
                rational next = a + b;
                a = b;
                b = next;
            }
            return a;
        }
        case closed_form_kind::fact: {
            rational r(1);
            for (index_t j = 2; j <= i; ++j) r = r * rational(static_cast<long>(j));
            return r;
        }
        case closed_form_kind::pow: {
            rational r(1);
            for (index_t j = 0; j < i; ++j) r = r * k;
            return r;
        }
        case closed_form_kind::nat_to_pow: {
            if (!k.is_natural() || !k.fits_index())
                throw std::invalid_argument("nat_to_pow needs a natural exponent");
            rational base(static_cast<long>(i));
            rational r(1);
            for (index_t j = 0; j < k.to_index(); ++j) r = r * base;
            return r;
        }
        case closed_form_kind::sum_nat: {
            rational n(static_cast<long>(i));
            return n * (n + rational(1)) / rational(2);
        }
        case closed_form_kind::aggr3_nat:
            return rational(3) * rational(static_cast<long>(i)) + rational(3);
        case closed_form_kind::expn: {
            rational sum(0), term(1);
            for (index_t j = 0;; ++j) {
                sum = sum + term;
                if (j == i) break;
                term = term * k / rational(static_cast<long>(j) + 1);
            }
            return sum;
        }
    }
    throw std::invalid_argument("unknown closed form");
}

}  // namespace streamcalc
