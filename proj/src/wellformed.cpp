#include "streamcalc/wellformed.hpp"

#include <functional>
#include <vector>

namespace streamcalc {

namespace {

struct frame {
    stream_value_ptr sv;
    counter_map m;
};

// Explicit work stack; every pending frame must succeed. Pointwise pushes
// both operands with copies of the same counter map (the check branches,
// counters do not flow across operands). Left operand is processed first so
// the reported failure is the leftmost one.
std::optional<wf_failure> traverse(const std::function<const stream_value_ptr*(const std::string&)>& lookup,
                                   stream_value_ptr start, counter_map m0) {
    std::vector<frame> work;
    work.push_back({std::move(start), std::move(m0)});
    while (!work.empty()) {
        frame f = std::move(work.back());
        work.pop_back();
        const stream_value_ptr& sv = f.sv;
        if (const auto* v = std::get_if<sv_var>(&sv->node)) {
            auto it = f.m.find(v->name);
            if (it != f.m.end()) {
                if (it->second > 0) continue;
                return wf_failure{v->name, it->second};
            }
            const stream_value_ptr* binding = lookup(v->name);
            if (binding == nullptr) continue;  // free variable
            counter_map m = std::move(f.m);
            m.emplace(v->name, 0);
            work.push_back({*binding, std::move(m)});
        } else if (const auto* c = std::get_if<sv_cons>(&sv->node)) {
            counter_map m = std::move(f.m);
            for (auto& [_, k] : m) ++k;
            work.push_back({c->tail, std::move(m)});
        } else if (const auto* t = std::get_if<sv_tail>(&sv->node)) {
            counter_map m = std::move(f.m);
            for (auto& [_, k] : m) --k;
            work.push_back({t->arg, std::move(m)});
        } else {
            const auto& p = std::get<sv_pointwise>(sv->node);
            work.push_back({p.right, f.m});
            work.push_back({p.left, std::move(f.m)});
        }
    }
    return std::nullopt;
}

std::function<const stream_value_ptr*(const std::string&)> env_lookup(const environment& env) {
    return [&env](const std::string& name) -> const stream_value_ptr* {
        auto it = env.find(name);
        return it == env.end() ? nullptr : &it->second;
    };
}

}  // namespace

bool wf_visit(const environment& env, const stream_value_ptr& sv, counter_map m) {
    return !traverse(env_lookup(env), sv, std::move(m)).has_value();
}

std::optional<wf_failure> check_wf_failure(const environment& env, const std::string& var,
                                           const stream_value_ptr& sv) {
    auto lookup = [&env, &var, &sv](const std::string& name) -> const stream_value_ptr* {
        if (name == var) return &sv;
        auto it = env.find(name);
        return it == env.end() ? nullptr : &it->second;
    };
    return traverse(lookup, make_sv_var(var), {});
}

bool check_wf(const environment& env, const std::string& var, const stream_value_ptr& sv) {
    return !check_wf_failure(env, var, sv).has_value();
}

bool binding_well_defined(const environment& env, const std::string& var) {
    return !traverse(env_lookup(env), make_sv_var(var), {}).has_value();
}

}  // namespace streamcalc
