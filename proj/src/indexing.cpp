#include "streamcalc/indexing.hpp"

#include <map>
#include <optional>
#include <utility>

#include "streamcalc/errors.hpp"

namespace streamcalc {

namespace {

// Iterative element walk. Three task kinds: evaluate a stream value at an
// index, combine the two topmost results with an arithmetic op, or close a
// variable whose binding just finished resolving. Divergence check: the
// indices pending for a variable form a strictly decreasing stack, so
// re-entering it at an index >= the most recent pending one can never bottom
// out (the dependency reproduces at every level); that check is O(1).
//
// Finished (variable, index) pairs are memoized for the duration of one query
// so a value that fans out through shared variables stays polynomial. When a
// trace is requested the memo is disabled: the trace then lists every
// resolution of the underlying derivation, not just the first of each.
struct engine {
    const environment& env;
    at_trace* trace;
    bool use_memo;

    std::map<std::pair<std::string, index_t>, rational> memo;
    std::map<std::string, std::vector<index_t>> pending;

    struct eval_task {
        stream_value_ptr sv;
        index_t i;
    };
    struct combine_task {
        arith_op op;
    };
    struct close_task {
        std::string var;
        index_t i;
    };
    using task = std::variant<eval_task, combine_task, close_task>;

    std::vector<task> tasks;
    std::vector<rational> results;

    std::optional<divergence> step(eval_task t) {
        const stream_value_ptr& sv = t.sv;
        if (const auto* v = std::get_if<sv_var>(&sv->node)) {
            if (use_memo) {
                auto hit = memo.find({v->name, t.i});
                if (hit != memo.end()) {
                    results.push_back(hit->second);
                    return std::nullopt;
                }
            }
            auto binding = env.find(v->name);
            if (binding == env.end()) throw undefined_variable(v->name);
            auto& open = pending[v->name];
            if (!open.empty() && open.back() <= t.i)
                return divergence{v->name, open.back(), t.i};
            open.push_back(t.i);
            if (trace != nullptr) trace->entries.emplace_back(v->name, t.i);
            tasks.push_back(close_task{v->name, t.i});
            tasks.push_back(eval_task{binding->second, t.i});
        } else if (const auto* c = std::get_if<sv_cons>(&sv->node)) {
            if (t.i == 0)
                results.push_back(c->head);
            else
                tasks.push_back(eval_task{c->tail, t.i - 1});
        } else if (const auto* tl = std::get_if<sv_tail>(&sv->node)) {
            tasks.push_back(eval_task{tl->arg, t.i + 1});
        } else {
            const auto& p = std::get<sv_pointwise>(sv->node);
            tasks.push_back(combine_task{p.op});
            tasks.push_back(eval_task{p.right, t.i});
            tasks.push_back(eval_task{p.left, t.i});
        }
        return std::nullopt;
    }

    element_result run(const stream_value_ptr& root, index_t i) {
        tasks.push_back(eval_task{root, i});
        while (!tasks.empty()) {
            task t = std::move(tasks.back());
            tasks.pop_back();
            if (auto* e = std::get_if<eval_task>(&t)) {
                if (auto d = step(std::move(*e))) return *d;
            } else if (auto* c = std::get_if<combine_task>(&t)) {
                rational r = std::move(results.back());
                results.pop_back();
                rational l = std::move(results.back());
                results.pop_back();
                results.push_back(apply_arith(c->op, l, r));
            } else {
                auto& cl = std::get<close_task>(t);
                if (use_memo) memo.emplace(std::make_pair(cl.var, cl.i), results.back());
                pending[cl.var].pop_back();
            }
        }
        return results.back();
    }
};

}  // namespace

element_result guarded_at(const environment& env, const stream_value_ptr& sv, index_t i,
                          at_trace* trace) {
    engine e{env, trace, trace == nullptr, {}, {}, {}, {}};
    return e.run(sv, i);
}

rational at(const environment& env, const stream_value_ptr& sv, index_t i) {
    element_result r = guarded_at(env, sv, i);
    if (auto* d = std::get_if<divergence>(&r))
        throw divergence_error(d->var, d->pending, d->reentry);
    return std::get<rational>(r);
}

std::vector<rational> prefix(const environment& env, const stream_value_ptr& sv, std::size_t n) {
    std::vector<rational> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(env, sv, static_cast<index_t>(i)));
    return out;
}

}  // namespace streamcalc
