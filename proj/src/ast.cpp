#include "streamcalc/ast.hpp"

namespace streamcalc {

const char* cmp_op_symbol(cmp_op op) {
    switch (op) {
        case cmp_op::le: return "<=";
        case cmp_op::lt: return "<";
        case cmp_op::eq: return "==";
        case cmp_op::ne: return "!=";
        case cmp_op::ge: return ">=";
        case cmp_op::gt: return ">";
    }
    return "?";
}

const char* sort_name(sort s) {
    switch (s) {
        case sort::stream: return "stream";
        case sort::number: return "number";
        case sort::boolean: return "boolean";
    }
    return "?";
}

namespace {
expr_ptr wrap(expr e) { return std::make_shared<const expr>(std::move(e)); }
}  // namespace

expr_ptr make_var(std::string name) { return wrap({var_expr{std::move(name)}}); }
expr_ptr make_if(expr_ptr c, expr_ptr t, expr_ptr e) {
    return wrap({if_expr{std::move(c), std::move(t), std::move(e)}});
}
expr_ptr make_cons(expr_ptr head, expr_ptr tail) {
    return wrap({cons_expr{std::move(head), std::move(tail)}});
}
expr_ptr make_tail(expr_ptr arg) { return wrap({tail_expr{std::move(arg)}}); }
expr_ptr make_pointwise(arith_op op, expr_ptr l, expr_ptr r) {
    return wrap({pointwise_expr{op, std::move(l), std::move(r)}});
}
expr_ptr make_call(std::string callee, std::vector<expr_ptr> args) {
    return wrap({call_expr{std::move(callee), std::move(args)}});
}
expr_ptr make_index(expr_ptr stream, expr_ptr index) {
    return wrap({index_expr{std::move(stream), std::move(index)}});
}
expr_ptr make_num_bin(arith_op op, expr_ptr l, expr_ptr r) {
    return wrap({num_bin_expr{op, std::move(l), std::move(r)}});
}
expr_ptr make_num_lit(rational v) { return wrap({num_lit_expr{std::move(v)}}); }
expr_ptr make_bool_lit(bool v) { return wrap({bool_lit_expr{v}}); }
expr_ptr make_cmp(cmp_op op, expr_ptr l, expr_ptr r) {
    return wrap({cmp_expr{op, std::move(l), std::move(r)}});
}
expr_ptr make_not(expr_ptr e) { return wrap({not_expr{std::move(e)}}); }
expr_ptr make_bool_bin(bool is_and, expr_ptr l, expr_ptr r) {
    return wrap({bool_bin_expr{is_and, std::move(l), std::move(r)}});
}
expr_ptr make_stream_value_expr(stream_value_ptr sv) {
    return wrap({stream_value_expr{std::move(sv)}});
}

bool expr_equal(const expr_ptr& a, const expr_ptr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& na) -> bool {
            using T = std::decay_t<decltype(na)>;
            const auto& nb = std::get<T>(b->node);
            if constexpr (std::is_same_v<T, var_expr>) {
                return na.name == nb.name;
            } else if constexpr (std::is_same_v<T, if_expr>) {
                return expr_equal(na.cond, nb.cond) && expr_equal(na.then_branch, nb.then_branch) &&
                       expr_equal(na.else_branch, nb.else_branch);
            } else if constexpr (std::is_same_v<T, cons_expr>) {
                return expr_equal(na.head, nb.head) && expr_equal(na.tail, nb.tail);
            } else if constexpr (std::is_same_v<T, tail_expr>) {
                return expr_equal(na.arg, nb.arg);
            } else if constexpr (std::is_same_v<T, pointwise_expr>) {
                return na.op == nb.op && expr_equal(na.left, nb.left) && expr_equal(na.right, nb.right);
            } else if constexpr (std::is_same_v<T, call_expr>) {
                if (na.callee != nb.callee || na.args.size() != nb.args.size()) return false;
                for (std::size_t i = 0; i < na.args.size(); ++i)
                    if (!expr_equal(na.args[i], nb.args[i])) return false;
                return true;
            } else if constexpr (std::is_same_v<T, index_expr>) {
                return expr_equal(na.stream, nb.stream) && expr_equal(na.index, nb.index);
            } else if constexpr (std::is_same_v<T, num_bin_expr>) {
                return na.op == nb.op && expr_equal(na.left, nb.left) && expr_equal(na.right, nb.right);
            } else if constexpr (std::is_same_v<T, num_lit_expr>) {
                return na.val == nb.val;
            } else if constexpr (std::is_same_v<T, bool_lit_expr>) {
                return na.val == nb.val;
            } else if constexpr (std::is_same_v<T, cmp_expr>) {
                return na.op == nb.op && expr_equal(na.left, nb.left) && expr_equal(na.right, nb.right);
            } else if constexpr (std::is_same_v<T, not_expr>) {
                return expr_equal(na.arg, nb.arg);
            } else if constexpr (std::is_same_v<T, bool_bin_expr>) {
                return na.is_and == nb.is_and && expr_equal(na.left, nb.left) &&
                       expr_equal(na.right, nb.right);
            } else {
                static_assert(std::is_same_v<T, stream_value_expr>);
                return sv_equal(na.val, nb.val);
            }
        },
        a->node);
}

const function_decl* program::find(const std::string& name) const {
    for (const auto& d : decls)
        if (d.name == name) return &d;
    return nullptr;
}

}  // namespace streamcalc
