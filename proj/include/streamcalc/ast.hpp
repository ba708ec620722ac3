#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "streamcalc/rational.hpp"
#include "streamcalc/value.hpp"

namespace streamcalc {

enum class cmp_op { le, lt, eq, ne, ge, gt };
const char* cmp_op_symbol(cmp_op op);

enum class sort { stream, number, boolean };
const char* sort_name(sort s);

struct expr;
using expr_ptr = std::shared_ptr<const expr>;

struct var_expr {
    std::string name;
};
struct if_expr {
    expr_ptr cond;
    expr_ptr then_branch;
    expr_ptr else_branch;
};
struct cons_expr {
    expr_ptr head;
    expr_ptr tail;
};
struct tail_expr {
    expr_ptr arg;
};
struct pointwise_expr {
    arith_op op;
    expr_ptr left;
    expr_ptr right;
};
struct call_expr {
    std::string callee;
    std::vector<expr_ptr> args;
};
struct index_expr {
    expr_ptr stream;
    expr_ptr index;
};
struct num_bin_expr {
    arith_op op;
    expr_ptr left;
    expr_ptr right;
};
struct num_lit_expr {
    rational val;
};
struct bool_lit_expr {
    bool val;
};
struct cmp_expr {
    cmp_op op;
    expr_ptr left;
    expr_ptr right;
};
struct not_expr {
    expr_ptr arg;
};
struct bool_bin_expr {
    bool is_and;  // false: or
    expr_ptr left;
    expr_ptr right;
};
// Leaf produced by substitution: an already-evaluated stream value embedded
// in expression position. Numbers and booleans embed as literals instead.
struct stream_value_expr {
    stream_value_ptr val;
};

struct expr {
    std::variant<var_expr, if_expr, cons_expr, tail_expr, pointwise_expr, call_expr, index_expr,
                 num_bin_expr, num_lit_expr, bool_lit_expr, cmp_expr, not_expr, bool_bin_expr,
                 stream_value_expr>
        node;
};

expr_ptr make_var(std::string name);
expr_ptr make_if(expr_ptr c, expr_ptr t, expr_ptr e);
expr_ptr make_cons(expr_ptr head, expr_ptr tail);
expr_ptr make_tail(expr_ptr arg);
expr_ptr make_pointwise(arith_op op, expr_ptr l, expr_ptr r);
expr_ptr make_call(std::string callee, std::vector<expr_ptr> args);
expr_ptr make_index(expr_ptr stream, expr_ptr index);
expr_ptr make_num_bin(arith_op op, expr_ptr l, expr_ptr r);
expr_ptr make_num_lit(rational v);
expr_ptr make_bool_lit(bool v);
expr_ptr make_cmp(cmp_op op, expr_ptr l, expr_ptr r);
expr_ptr make_not(expr_ptr e);
expr_ptr make_bool_bin(bool is_and, expr_ptr l, expr_ptr r);
expr_ptr make_stream_value_expr(stream_value_ptr sv);

bool expr_equal(const expr_ptr& a, const expr_ptr& b);

struct function_decl {
    std::string name;
    std::vector<std::string> params;
    expr_ptr body;
    // Filled by validate(): one entry per parameter; nullopt when the
    // parameter is never used and any argument kind is acceptable.
    std::vector<std::optional<sort>> param_sorts;
};

struct program {
    std::vector<function_decl> decls;

    const function_decl* find(const std::string& name) const;
};

// Checks declaration-level invariants and infers parameter sorts:
// distinct function and parameter names, calls resolve with matching arity,
// bare identifiers are parameters, every body is stream-sorted, and every
// parameter is used at one sort only.
void validate(program& p);

// Validates a top-level expression against a program: no free identifiers
// (there are no parameters in scope), calls resolve with matching arity.
// Also (re-)validates the program.
void validate_expression(program& p, const expr_ptr& e);

}  // namespace streamcalc
