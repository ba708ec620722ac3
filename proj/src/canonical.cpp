#include "streamcalc/canonical.hpp"

#include <map>
#include <set>

#include "streamcalc/errors.hpp"

namespace streamcalc {

namespace {

// Depth-first, left-to-right walk over the value; bindings are entered at the
// first occurrence of their variable. `on_free` decides whether an unbound
// variable is an error.
void walk(const environment& env, const stream_value_ptr& sv, std::set<std::string>& seen,
          std::vector<std::string>& order, bool strict) {
    if (const auto* v = std::get_if<sv_var>(&sv->node)) {
        if (seen.count(v->name)) return;
        auto it = env.find(v->name);
        if (it == env.end()) {
            if (strict) throw open_capsule(v->name);
            return;
        }
        seen.insert(v->name);
        order.push_back(v->name);
        walk(env, it->second, seen, order, strict);
    } else if (const auto* c = std::get_if<sv_cons>(&sv->node)) {
        walk(env, c->tail, seen, order, strict);
    } else if (const auto* t = std::get_if<sv_tail>(&sv->node)) {
        walk(env, t->arg, seen, order, strict);
    } else {
        const auto& p = std::get<sv_pointwise>(sv->node);
        walk(env, p.left, seen, order, strict);
        walk(env, p.right, seen, order, strict);
    }
}

std::vector<std::string> reach_order(const capsule& c, bool strict) {
    std::vector<std::string> order;
    if (!c.val.is_stream()) return order;
    std::set<std::string> seen;
    walk(c.env, c.val.stream(), seen, order, strict);
    return order;
}

stream_value_ptr rename(const stream_value_ptr& sv, const std::map<std::string, std::string>& names) {
    if (const auto* v = std::get_if<sv_var>(&sv->node)) {
        return make_sv_var(names.at(v->name));
    }
    if (const auto* c = std::get_if<sv_cons>(&sv->node)) {
        return make_sv_cons(c->head, rename(c->tail, names));
    }
    if (const auto* t = std::get_if<sv_tail>(&sv->node)) {
        return make_sv_tail(rename(t->arg, names));
    }
    const auto& p = std::get<sv_pointwise>(sv->node);
    return make_sv_pointwise(p.op, rename(p.left, names), rename(p.right, names));
}

}  // namespace

std::vector<std::string> reachable_bindings(const capsule& c) { return reach_order(c, false); }

capsule alpha_canonicalize(const capsule& c) {
    if (!c.val.is_stream()) return capsule{c.val, {}};
    auto order = reach_order(c, true);
    std::map<std::string, std::string> names;
    for (std::size_t i = 0; i < order.size(); ++i) names.emplace(order[i], "v" + std::to_string(i));
    capsule out{value{rename(c.val.stream(), names)}, {}};
    for (const auto& name : order) out.env.emplace(names.at(name), rename(c.env.at(name), names));
    return out;
}

bool capsule_equal(const capsule& a, const capsule& b) {
    if (!value_equiv(a.val, b.val, {})) return false;
    if (a.env.size() != b.env.size()) return false;
    for (auto ita = a.env.begin(), itb = b.env.begin(); ita != a.env.end(); ++ita, ++itb) {
        if (ita->first != itb->first || !sv_equal(ita->second, itb->second)) return false;
    }
    return true;
}

bool capsule_alpha_equal(const capsule& a, const capsule& b) {
    return capsule_equal(alpha_canonicalize(a), alpha_canonicalize(b));
}

}  // namespace streamcalc
