#include "streamcalc/printer.hpp"

#include <sstream>

#include "json.hpp"
#include "streamcalc/canonical.hpp"
#include "streamcalc/errors.hpp"
#include "streamcalc/parser.hpp"

namespace streamcalc {

// Intrinsic binding strength of each printed form; a child is parenthesized
// when its strength is below what its slot demands. Pointwise children of
// cons and of pointwise are parenthesized even where re-parsing would not
// strictly need it, matching the usual way capsules are written.
namespace {

constexpr int prec_or = 1;
constexpr int prec_and = 2;
constexpr int prec_not = 3;
constexpr int prec_cmp = 4;
constexpr int prec_cons = 5;
constexpr int prec_pw = 6;
constexpr int prec_add = 7;
constexpr int prec_mul = 8;
constexpr int prec_neg = 9;
constexpr int prec_postfix = 10;
constexpr int prec_atom = 11;

int sv_prec(const stream_value_ptr& sv) {
    if (std::holds_alternative<sv_var>(sv->node)) return prec_atom;
    if (std::holds_alternative<sv_cons>(sv->node)) return prec_cons;
    if (std::holds_alternative<sv_tail>(sv->node)) return prec_postfix;
    return prec_pw;
}

int lit_prec(const rational& v) { return v < rational(0) ? prec_neg : prec_atom; }

void print_sv(std::ostream& os, const stream_value_ptr& sv);

void print_sv_child(std::ostream& os, const stream_value_ptr& sv, int min_prec, bool force_parens) {
    if (force_parens || sv_prec(sv) < min_prec) {
        os << '(';
        print_sv(os, sv);
        os << ')';
    } else {
        print_sv(os, sv);
    }
}

void print_sv(std::ostream& os, const stream_value_ptr& sv) {
    if (const auto* v = std::get_if<sv_var>(&sv->node)) {
        os << v->name;
    } else if (const auto* c = std::get_if<sv_cons>(&sv->node)) {
        if (lit_prec(c->head) < prec_pw) {
            os << '(' << c->head.str() << ')';
        } else {
            os << c->head.str();
        }
        os << ':';
        bool pw_tail = std::holds_alternative<sv_pointwise>(c->tail->node);
        print_sv_child(os, c->tail, prec_cons, pw_tail);
    } else if (const auto* t = std::get_if<sv_tail>(&sv->node)) {
        print_sv_child(os, t->arg, prec_postfix, false);
        os << '^';
    } else {
        const auto& p = std::get<sv_pointwise>(sv->node);
        bool lp = std::holds_alternative<sv_pointwise>(p.left->node);
        bool rp = std::holds_alternative<sv_pointwise>(p.right->node);
        print_sv_child(os, p.left, prec_add, lp);
        os << ' ' << pointwise_op_symbol(p.op) << ' ';
        print_sv_child(os, p.right, prec_add, rp);
    }
}

int expr_prec(const expr_ptr& e) {
    return std::visit(
        [](const auto& n) -> int {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, var_expr> || std::is_same_v<T, bool_lit_expr> ||
                          std::is_same_v<T, call_expr>) {
                return prec_atom;
            } else if constexpr (std::is_same_v<T, num_lit_expr>) {
                return lit_prec(n.val);
            } else if constexpr (std::is_same_v<T, if_expr> || std::is_same_v<T, cons_expr>) {
                return prec_cons;
            } else if constexpr (std::is_same_v<T, pointwise_expr>) {
                return prec_pw;
            } else if constexpr (std::is_same_v<T, num_bin_expr>) {
                return (n.op == arith_op::add || n.op == arith_op::sub) ? prec_add : prec_mul;
            } else if constexpr (std::is_same_v<T, tail_expr> || std::is_same_v<T, index_expr>) {
                return prec_postfix;
            } else if constexpr (std::is_same_v<T, cmp_expr>) {
                return prec_cmp;
            } else if constexpr (std::is_same_v<T, not_expr>) {
                return prec_not;
            } else if constexpr (std::is_same_v<T, bool_bin_expr>) {
                return n.is_and ? prec_and : prec_or;
            } else {
                static_assert(std::is_same_v<T, stream_value_expr>);
                return sv_prec(n.val);
            }
        },
        e->node);
}

void print_expr(std::ostream& os, const expr_ptr& e);

void print_child(std::ostream& os, const expr_ptr& e, int min_prec, bool force_parens = false) {
    if (force_parens || expr_prec(e) < min_prec) {
        os << '(';
        print_expr(os, e);
        os << ')';
    } else {
        print_expr(os, e);
    }
}

bool is_pointwise_form(const expr_ptr& e) {
    if (std::holds_alternative<pointwise_expr>(e->node)) return true;
    if (const auto* sv = std::get_if<stream_value_expr>(&e->node))
        return std::holds_alternative<sv_pointwise>(sv->val->node);
    return false;
}

void print_expr(std::ostream& os, const expr_ptr& e) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, var_expr>) {
                os << n.name;
            } else if constexpr (std::is_same_v<T, num_lit_expr>) {
                os << n.val.str();
            } else if constexpr (std::is_same_v<T, bool_lit_expr>) {
                os << (n.val ? "true" : "false");
            } else if constexpr (std::is_same_v<T, if_expr>) {
                os << "if ";
                print_child(os, n.cond, prec_or);
                os << " then ";
                print_child(os, n.then_branch, prec_cons);
                os << " else ";
                print_child(os, n.else_branch, prec_cons);
            } else if constexpr (std::is_same_v<T, cons_expr>) {
                print_child(os, n.head, prec_pw);
                os << ':';
                print_child(os, n.tail, prec_cons, is_pointwise_form(n.tail));
            } else if constexpr (std::is_same_v<T, tail_expr>) {
                print_child(os, n.arg, prec_postfix);
                os << '^';
            } else if constexpr (std::is_same_v<T, pointwise_expr>) {
                print_child(os, n.left, prec_add, is_pointwise_form(n.left));
                os << ' ' << pointwise_op_symbol(n.op) << ' ';
                print_child(os, n.right, prec_add, is_pointwise_form(n.right));
            } else if constexpr (std::is_same_v<T, call_expr>) {
                os << n.callee << '(';
                for (std::size_t i = 0; i < n.args.size(); ++i) {
                    if (i) os << ", ";
                    print_expr(os, n.args[i]);
                }
                os << ')';
            } else if constexpr (std::is_same_v<T, index_expr>) {
                print_child(os, n.stream, prec_postfix);
                os << '(';
                print_expr(os, n.index);
                os << ')';
            } else if constexpr (std::is_same_v<T, num_bin_expr>) {
                bool additive = n.op == arith_op::add || n.op == arith_op::sub;
                int prec = additive ? prec_add : prec_mul;
                print_child(os, n.left, prec);
                os << ' ' << arith_op_symbol(n.op) << ' ';
                print_child(os, n.right, prec + 1);
            } else if constexpr (std::is_same_v<T, cmp_expr>) {
                print_child(os, n.left, prec_cons);
                os << ' ' << cmp_op_symbol(n.op) << ' ';
                print_child(os, n.right, prec_cons);
            } else if constexpr (std::is_same_v<T, not_expr>) {
                os << '!';
                print_child(os, n.arg, prec_cons);
            } else if constexpr (std::is_same_v<T, bool_bin_expr>) {
                int prec = n.is_and ? prec_and : prec_or;
                print_child(os, n.left, prec);
                os << (n.is_and ? " && " : " || ");
                print_child(os, n.right, prec + 1);
            } else {
                static_assert(std::is_same_v<T, stream_value_expr>);
                print_sv(os, n.val);
            }
        },
        e->node);
}

}  // namespace

std::string render_expr(const expr_ptr& e) {
    std::ostringstream os;
    print_expr(os, e);
    return os.str();
}

std::string render_stream_value(const stream_value_ptr& sv) {
    std::ostringstream os;
    print_sv(os, sv);
    return os.str();
}

std::string render_value(const value& v) {
    if (v.is_number()) return v.number().str();
    if (v.is_boolean()) return v.boolean() ? "true" : "false";
    return render_stream_value(v.stream());
}

std::string render_program(const program& p) {
    std::ostringstream os;
    for (const auto& d : p.decls) {
        os << d.name << '(';
        for (std::size_t i = 0; i < d.params.size(); ++i) {
            if (i) os << ", ";
            os << d.params[i];
        }
        os << ") = " << render_expr(d.body) << '\n';
    }
    return os.str();
}

std::string render_capsule(const capsule& c) {
    std::ostringstream os;
    os << render_value(c.val);
    auto order = reachable_bindings(c);
    if (!order.empty()) {
        os << " where { ";
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (i) os << ", ";
            os << order[i] << " = " << render_stream_value(c.env.at(order[i]));
        }
        os << " }";
    }
    return os.str();
}

std::string capsule_to_json(const capsule& c) {
    nlohmann::ordered_json j;
    j["value"] = render_value(c.val);
    j["env"] = nlohmann::ordered_json::object();
    for (const auto& name : reachable_bindings(c)) j["env"][name] = render_stream_value(c.env.at(name));
    return j.dump();
}

capsule capsule_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    capsule c{expr_to_value(parse_expr(j.at("value").get<std::string>())), {}};
    for (const auto& [name, sv_text] : j.at("env").items())
        c.env.emplace(name, expr_to_stream_value(parse_expr(sv_text.get<std::string>())));
    return c;
}

}  // namespace streamcalc
