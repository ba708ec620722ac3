#include "streamcalc/eval.hpp"

#include <cassert>
#include <set>
#include <utility>

#include "streamcalc/errors.hpp"
#include "streamcalc/indexing.hpp"
#include "streamcalc/printer.hpp"
#include "streamcalc/wellformed.hpp"

namespace streamcalc {

namespace {

void collect_sv_vars(const stream_value_ptr& sv, std::set<std::string>& out) {
    if (const auto* v = std::get_if<sv_var>(&sv->node)) {
        out.insert(v->name);
    } else if (const auto* c = std::get_if<sv_cons>(&sv->node)) {
        collect_sv_vars(c->tail, out);
    } else if (const auto* t = std::get_if<sv_tail>(&sv->node)) {
        collect_sv_vars(t->arg, out);
    } else {
        const auto& p = std::get<sv_pointwise>(sv->node);
        collect_sv_vars(p.left, out);
        collect_sv_vars(p.right, out);
    }
}

void collect_expr_vars(const expr_ptr& e, std::set<std::string>& out) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, var_expr>) {
                out.insert(node.name);
            } else if constexpr (std::is_same_v<T, if_expr>) {
                collect_expr_vars(node.cond, out);
                collect_expr_vars(node.then_branch, out);
                collect_expr_vars(node.else_branch, out);
            } else if constexpr (std::is_same_v<T, cons_expr>) {
                collect_expr_vars(node.head, out);
                collect_expr_vars(node.tail, out);
            } else if constexpr (std::is_same_v<T, tail_expr>) {
                collect_expr_vars(node.arg, out);
            } else if constexpr (std::is_same_v<T, pointwise_expr>) {
                collect_expr_vars(node.left, out);
                collect_expr_vars(node.right, out);
            } else if constexpr (std::is_same_v<T, call_expr>) {
                for (const auto& a : node.args) collect_expr_vars(a, out);
            } else if constexpr (std::is_same_v<T, index_expr>) {
                collect_expr_vars(node.stream, out);
                collect_expr_vars(node.index, out);
            } else if constexpr (std::is_same_v<T, num_bin_expr>) {
                collect_expr_vars(node.left, out);
                collect_expr_vars(node.right, out);
            } else if constexpr (std::is_same_v<T, cmp_expr>) {
                collect_expr_vars(node.left, out);
                collect_expr_vars(node.right, out);
            } else if constexpr (std::is_same_v<T, not_expr>) {
                collect_expr_vars(node.arg, out);
            } else if constexpr (std::is_same_v<T, bool_bin_expr>) {
                collect_expr_vars(node.left, out);
                collect_expr_vars(node.right, out);
            } else if constexpr (std::is_same_v<T, stream_value_expr>) {
                collect_sv_vars(node.val, out);
            }
        },
        e->node);
}

class interpreter {
public:
    interpreter(const program& p, environment env, std::uint64_t fuel)
        : prog_(p), env_(std::move(env)), fuel_(fuel), budget_(fuel) {
        for (const auto& [name, sv] : env_) {
            used_names_.insert(name);
            collect_sv_vars(sv, used_names_);
        }
    }

    capsule run(const expr_ptr& e) {
        std::set<std::string> vars;
        collect_expr_vars(e, vars);
        used_names_.insert(vars.begin(), vars.end());
        value v = eval(e);
        return capsule{std::move(v), std::move(env_)};
    }

    capsule run_invoke(const std::string& fn, const std::vector<value>& args) {
        for (const auto& a : args)
            if (a.is_stream()) collect_sv_vars(a.stream(), used_names_);
        value v = apply(fn, args);
        return capsule{std::move(v), std::move(env_)};
    }

private:
    static sort_error bad_sort(sort expected, const value& got, const std::string& context) {
        return sort_error(context + " evaluated to " + render_value(got) + ", expected a " +
                          sort_name(expected));
    }

    rational eval_number(const expr_ptr& e, const char* context) {
        value v = eval(e);
        if (!v.is_number()) throw bad_sort(sort::number, v, context);
        return v.number();
    }

    bool eval_boolean(const expr_ptr& e, const char* context) {
        value v = eval(e);
        if (!v.is_boolean()) throw bad_sort(sort::boolean, v, context);
        return v.boolean();
    }

    stream_value_ptr eval_stream(const expr_ptr& e, const char* context) {
        value v = eval(e);
        if (!v.is_stream()) throw bad_sort(sort::stream, v, context);
        return v.stream();
    }

    value eval(const expr_ptr& e) {
        return std::visit([this](const auto& node) { return eval_node(node); }, e->node);
    }

    value eval_node(const var_expr& n) { return value{make_sv_var(n.name)}; }
    value eval_node(const num_lit_expr& n) { return value{n.val}; }
    value eval_node(const bool_lit_expr& n) { return value{n.val}; }
    value eval_node(const stream_value_expr& n) { return value{n.val}; }

    value eval_node(const if_expr& n) {
        bool c = eval_boolean(n.cond, "if condition");
        return eval(c ? n.then_branch : n.else_branch);
    }

    value eval_node(const cons_expr& n) {
        rational h = eval_number(n.head, "head of :");
        stream_value_ptr t = eval_stream(n.tail, "tail of :");
        return value{make_sv_cons(std::move(h), std::move(t))};
    }

    value eval_node(const tail_expr& n) {
        return value{make_sv_tail(eval_stream(n.arg, "argument of ^"))};
    }

    value eval_node(const pointwise_expr& n) {
        stream_value_ptr l = eval_stream(n.left, "left operand of pointwise op");
        stream_value_ptr r = eval_stream(n.right, "right operand of pointwise op");
        return value{make_sv_pointwise(n.op, std::move(l), std::move(r))};
    }

    value eval_node(const num_bin_expr& n) {
        rational l = eval_number(n.left, "left operand of arithmetic op");
        rational r = eval_number(n.right, "right operand of arithmetic op");
        return value{apply_arith(n.op, l, r)};
    }

    value eval_node(const cmp_expr& n) {
        rational l = eval_number(n.left, "left operand of comparison");
        rational r = eval_number(n.right, "right operand of comparison");
        switch (n.op) {
            case cmp_op::lt: return value{l < r};
            case cmp_op::le: return value{l <= r};
            case cmp_op::gt: return value{l > r};
            case cmp_op::ge: return value{l >= r};
            case cmp_op::eq: return value{l == r};
            case cmp_op::ne: return value{l != r};
        }
        throw sort_error("unknown comparison operator");
    }

    value eval_node(const not_expr& n) { return value{!eval_boolean(n.arg, "argument of !")}; }

    value eval_node(const bool_bin_expr& n) {
        bool l = eval_boolean(n.left, n.is_and ? "left operand of &&" : "left operand of ||");
        if (n.is_and && !l) return value{false};
        if (!n.is_and && l) return value{true};
        return value{eval_boolean(n.right, n.is_and ? "right operand of &&" : "right operand of ||")};
    }

    value eval_node(const call_expr& n) {
        std::vector<value> args;
        args.reserve(n.args.size());
        for (const auto& a : n.args) args.push_back(eval(a));
        return apply(n.callee, args);
    }

    // Indexing never contributes bindings to the result: whatever the index
    // sub-evaluation added is dropped once the element is read.
    value eval_node(const index_expr& n) {
        environment snapshot = env_;
        stream_value_ptr sv = eval_stream(n.stream, "indexed expression");
        rational iv = eval_number(n.index, "stream index");
        if (!iv.is_natural() || !iv.fits_index()) throw non_natural_index(iv.str());
        rational element = at(env_, sv, iv.to_index());
        env_ = std::move(snapshot);
        return value{std::move(element)};
    }

    value apply(const std::string& fn, const std::vector<value>& args) {
        const function_decl* decl = prog_.find(fn);
        if (decl == nullptr) throw unknown_function("call to undeclared function " + fn);
        if (decl->params.size() != args.size())
            throw arity_error(fn + " takes " + std::to_string(decl->params.size()) +
                              " arguments, got " + std::to_string(args.size()));
        evaluated_call call{fn, args};
        if (auto pending = lookup_call(trace_, call, env_)) return value{make_sv_var(*pending)};
        if (fuel_ == 0) throw fuel_exhausted(fn, budget_);
        --fuel_;
        std::string var = fresh_name();
        expr_ptr body = substitute(decl->body, decl->params, args);
        trace_.push_back({std::move(call), var});
        value result = eval(body);
        trace_.pop_back();
        if (!result.is_stream()) throw bad_sort(sort::stream, result, "body of " + fn);
        stream_value_ptr sv = result.stream();
        if (auto failure = check_wf_failure(env_, var, sv))
            throw not_well_defined(var, render_stream_value(sv), failure->var, failure->balance);
        env_.emplace(var, std::move(sv));
        return value{make_sv_var(std::move(var))};
    }

    std::string fresh_name() {
        for (;;) {
            std::string name = "v" + std::to_string(fresh_counter_++);
            if (used_names_.find(name) == used_names_.end()) return name;
        }
    }

    const program& prog_;
    environment env_;
    call_trace trace_;
    std::uint64_t fuel_;
    std::uint64_t budget_;
    std::uint64_t fresh_counter_ = 0;
    std::set<std::string> used_names_;
};

}  // namespace

expr_ptr substitute(const expr_ptr& body, const std::vector<std::string>& params,
                    const std::vector<value>& args) {
    assert(params.size() == args.size());
    return std::visit(
        [&](const auto& node) -> expr_ptr {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, var_expr>) {
                for (std::size_t i = 0; i < params.size(); ++i) {
                    if (params[i] != node.name) continue;
                    const value& v = args[i];
                    if (v.is_number()) return make_num_lit(v.number());
                    if (v.is_boolean()) return make_bool_lit(v.boolean());
                    return make_stream_value_expr(v.stream());
                }
                return make_var(node.name);
            } else if constexpr (std::is_same_v<T, if_expr>) {
                return make_if(substitute(node.cond, params, args),
                               substitute(node.then_branch, params, args),
                               substitute(node.else_branch, params, args));
            } else if constexpr (std::is_same_v<T, cons_expr>) {
                return make_cons(substitute(node.head, params, args),
                                 substitute(node.tail, params, args));
            } else if constexpr (std::is_same_v<T, tail_expr>) {
                return make_tail(substitute(node.arg, params, args));
            } else if constexpr (std::is_same_v<T, pointwise_expr>) {
                return make_pointwise(node.op, substitute(node.left, params, args),
                                      substitute(node.right, params, args));
            } else if constexpr (std::is_same_v<T, call_expr>) {
                std::vector<expr_ptr> sub_args;
                sub_args.reserve(node.args.size());
                for (const auto& a : node.args) sub_args.push_back(substitute(a, params, args));
                return make_call(node.callee, std::move(sub_args));
            } else if constexpr (std::is_same_v<T, index_expr>) {
                return make_index(substitute(node.stream, params, args),
                                  substitute(node.index, params, args));
            } else if constexpr (std::is_same_v<T, num_bin_expr>) {
                return make_num_bin(node.op, substitute(node.left, params, args),
                                    substitute(node.right, params, args));
            } else if constexpr (std::is_same_v<T, cmp_expr>) {
                return make_cmp(node.op, substitute(node.left, params, args),
                                substitute(node.right, params, args));
            } else if constexpr (std::is_same_v<T, not_expr>) {
                return make_not(substitute(node.arg, params, args));
            } else if constexpr (std::is_same_v<T, bool_bin_expr>) {
                return make_bool_bin(node.is_and, substitute(node.left, params, args),
                                     substitute(node.right, params, args));
            } else {
                return std::make_shared<expr>(expr{node});
            }
        },
        body->node);
}

std::optional<std::string> lookup_call(const call_trace& trace, const evaluated_call& call,
                                       const environment& env) {
    for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
        const evaluated_call& c = it->first;
        if (c.callee != call.callee || c.args.size() != call.args.size()) continue;
        bool all = true;
        for (std::size_t i = 0; i < c.args.size(); ++i) {
            if (!value_equiv(c.args[i], call.args[i], env)) {
                all = false;
                break;
            }
        }
        if (all) return it->second;
    }
    return std::nullopt;
}

capsule evaluate(const program& p, const expr_ptr& e, const environment& env, std::uint64_t fuel) {
    interpreter in(p, env, fuel);
    return in.run(e);
}

capsule invoke(const program& p, const std::string& fn, const std::vector<value>& args,
               const environment& env, std::uint64_t fuel) {
    interpreter in(p, env, fuel);
    return in.run_invoke(fn, args);
}

}  // namespace streamcalc
