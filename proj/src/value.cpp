#include "streamcalc/value.hpp"

#include "streamcalc/errors.hpp"

namespace streamcalc {

const char* arith_op_symbol(arith_op op) {
    switch (op) {
        case arith_op::add: return "+";
        case arith_op::sub: return "-";
        case arith_op::mul: return "*";
        case arith_op::div: return "/";
    }
    return "?";
}

const char* pointwise_op_symbol(arith_op op) {
    switch (op) {
        case arith_op::add: return "[+]";
        case arith_op::sub: return "[-]";
        case arith_op::mul: return "[*]";
        case arith_op::div: return "[/]";
    }
    return "?";
}

rational apply_arith(arith_op op, const rational& l, const rational& r) {
    switch (op) {
        case arith_op::add: return l + r;
        case arith_op::sub: return l - r;
        case arith_op::mul: return l * r;
        case arith_op::div: return l / r;
    }
    throw division_by_zero();  // unreachable
}

stream_value_ptr make_sv_var(std::string name) {
    return std::make_shared<const stream_value>(stream_value{sv_var{std::move(name)}});
}
stream_value_ptr make_sv_cons(rational head, stream_value_ptr tail) {
    return std::make_shared<const stream_value>(stream_value{sv_cons{std::move(head), std::move(tail)}});
}
stream_value_ptr make_sv_tail(stream_value_ptr arg) {
    return std::make_shared<const stream_value>(stream_value{sv_tail{std::move(arg)}});
}
stream_value_ptr make_sv_pointwise(arith_op op, stream_value_ptr left, stream_value_ptr right) {
    return std::make_shared<const stream_value>(
        stream_value{sv_pointwise{op, std::move(left), std::move(right)}});
}

bool sv_equal(const stream_value_ptr& a, const stream_value_ptr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->node.index() != b->node.index()) return false;
    if (const auto* va = std::get_if<sv_var>(&a->node)) {
        return va->name == std::get<sv_var>(b->node).name;
    }
    if (const auto* ca = std::get_if<sv_cons>(&a->node)) {
        const auto& cb = std::get<sv_cons>(b->node);
        return ca->head == cb.head && sv_equal(ca->tail, cb.tail);
    }
    if (const auto* ta = std::get_if<sv_tail>(&a->node)) {
        return sv_equal(ta->arg, std::get<sv_tail>(b->node).arg);
    }
    const auto& pa = std::get<sv_pointwise>(a->node);
    const auto& pb = std::get<sv_pointwise>(b->node);
    return pa.op == pb.op && sv_equal(pa.left, pb.left) && sv_equal(pa.right, pb.right);
}

bool value_equiv(const value& a, const value& b, const environment& env) {
    (void)env;
    if (a.v.index() != b.v.index()) return false;
    if (a.is_number()) return a.number() == b.number();
    if (a.is_boolean()) return a.boolean() == b.boolean();
    return sv_equal(a.stream(), b.stream());
}

environment env_join(const environment& a, const environment& b) {
    environment out = a;
    for (const auto& [name, sv] : b) {
        auto [it, inserted] = out.emplace(name, sv);
        if (!inserted && !sv_equal(it->second, sv)) throw incompatible_environments(name);
    }
    return out;
}

}  // namespace streamcalc
