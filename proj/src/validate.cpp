#include <map>
#include <optional>

#include "streamcalc/ast.hpp"
#include "streamcalc/errors.hpp"

namespace streamcalc {

namespace {

// Parameter sorts are inferred as a fixpoint: intra-body usage constrains
// directly, argument positions constrain against the callee's (possibly not
// yet known) parameter sorts, so knowledge flows across declarations until
// nothing changes. Structural mismatches are stable across iterations and
// throw immediately.
class validator {
public:
    explicit validator(program& p) : prog_(p) {
        for (auto& d : prog_.decls) {
            if (!by_name_.emplace(d.name, &d).second)
                throw duplicate_declaration("function " + d.name + " declared twice");
            d.param_sorts.assign(d.params.size(), std::nullopt);
        }
    }

    void run() {
        do {
            changed_ = false;
            for (auto& d : prog_.decls) {
                current_ = &d;
                check(d.body, sort::stream);
            }
        } while (changed_);
    }

    void run_expression(const expr_ptr& e) {
        current_ = nullptr;
        check(e, std::nullopt);
    }

private:
    std::string where() const { return current_ ? " in " + current_->name : ""; }

    void require(std::optional<sort> expected, sort actual, const char* what) {
        if (expected && *expected != actual)
            throw sort_error(std::string(what) + " has sort " + sort_name(actual) + ", expected " +
                             sort_name(*expected) + where());
    }

    void constrain_param(const std::string& name, sort s) {
        for (std::size_t i = 0; i < current_->params.size(); ++i) {
            if (current_->params[i] != name) continue;
            auto& slot = current_->param_sorts[i];
            if (!slot) {
                slot = s;
                changed_ = true;
            } else if (*slot != s) {
                throw ambiguous_sort("parameter " + name + " of " + current_->name + " is used both as " +
                                     sort_name(*slot) + " and as " + sort_name(s));
            }
            return;
        }
    }

    void check(const expr_ptr& e, std::optional<sort> expected) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, var_expr>) {
                    bool is_param = current_ && std::find(current_->params.begin(), current_->params.end(),
                                                          n.name) != current_->params.end();
                    if (!is_param)
                        throw unknown_identifier("identifier " + n.name + " is not a parameter" + where());
                    if (expected) constrain_param(n.name, *expected);
                } else if constexpr (std::is_same_v<T, if_expr>) {
                    require(expected, sort::stream, "conditional");
                    check(n.cond, sort::boolean);
                    check(n.then_branch, sort::stream);
                    check(n.else_branch, sort::stream);
                } else if constexpr (std::is_same_v<T, cons_expr>) {
                    require(expected, sort::stream, "cons");
                    check(n.head, sort::number);
                    check(n.tail, sort::stream);
                } else if constexpr (std::is_same_v<T, tail_expr>) {
                    require(expected, sort::stream, "tail");
                    check(n.arg, sort::stream);
                } else if constexpr (std::is_same_v<T, pointwise_expr>) {
                    require(expected, sort::stream, "pointwise operation");
                    check(n.left, sort::stream);
                    check(n.right, sort::stream);
                } else if constexpr (std::is_same_v<T, call_expr>) {
                    require(expected, sort::stream, "call");
                    auto it = by_name_.find(n.callee);
                    if (it == by_name_.end())
                        throw unknown_function("call to undeclared function " + n.callee + where());
                    const function_decl& callee = *it->second;
                    if (callee.params.size() != n.args.size())
                        throw arity_error(n.callee + " takes " + std::to_string(callee.params.size()) +
                                          " argument(s), called with " + std::to_string(n.args.size()) +
                                          where());
                    for (std::size_t i = 0; i < n.args.size(); ++i)
                        check(n.args[i], callee.param_sorts[i]);
                } else if constexpr (std::is_same_v<T, index_expr>) {
                    require(expected, sort::number, "index access");
                    check(n.stream, sort::stream);
                    check(n.index, sort::number);
                } else if constexpr (std::is_same_v<T, num_bin_expr>) {
                    require(expected, sort::number, "arithmetic");
                    check(n.left, sort::number);
                    check(n.right, sort::number);
                } else if constexpr (std::is_same_v<T, num_lit_expr>) {
                    require(expected, sort::number, "numeric literal");
                } else if constexpr (std::is_same_v<T, bool_lit_expr>) {
                    require(expected, sort::boolean, "boolean literal");
                } else if constexpr (std::is_same_v<T, cmp_expr>) {
                    require(expected, sort::boolean, "comparison");
                    check(n.left, sort::number);
                    check(n.right, sort::number);
                } else if constexpr (std::is_same_v<T, not_expr>) {
                    require(expected, sort::boolean, "negation");
                    check(n.arg, sort::boolean);
                } else if constexpr (std::is_same_v<T, bool_bin_expr>) {
                    require(expected, sort::boolean, "boolean operation");
                    check(n.left, sort::boolean);
                    check(n.right, sort::boolean);
                } else {
                    static_assert(std::is_same_v<T, stream_value_expr>);
                    require(expected, sort::stream, "stream value");
                }
            },
            e->node);
    }

    program& prog_;
    std::map<std::string, function_decl*> by_name_;
    function_decl* current_ = nullptr;
    bool changed_ = false;
};

}  // namespace

void validate(program& p) { validator(p).run(); }

void validate_expression(program& p, const expr_ptr& e) {
    validator v(p);
    v.run();
    v.run_expression(e);
}

}  // namespace streamcalc
