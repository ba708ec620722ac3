#include "streamcalc/parser.hpp"

#include <cctype>
#include <optional>
#include <set>
#include <utility>

#include "streamcalc/errors.hpp"

namespace streamcalc {

namespace {

enum class tok {
    ident, number,
    kw_if, kw_then, kw_else, kw_true, kw_false,
    lparen, rparen, lbrace, rbrace, comma, equal,
    colon, caret,
    pw_add, pw_sub, pw_mul, pw_div,
    plus, minus, star, slash,
    le, lt, eq_eq, ne, ge, gt,
    and_and, or_or, bang,
    end,
};

struct token {
    tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class lexer {
public:
    explicit lexer(const std::string& src) : src_(src) {}

    std::vector<token> run() {
        std::vector<token> out;
        while (true) {
            skip_blank();
            if (pos_ >= src_.size()) break;
            out.push_back(next());
        }
        out.push_back({tok::end, "", line_, col_});
        return out;
    }

private:
    void skip_blank() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++col_;
                ++pos_;
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    token next() {
        std::size_t line = line_, col = col_;
        char c = src_[pos_];
        auto make = [&](tok k, std::size_t len) {
            token t{k, src_.substr(pos_, len), line, col};
            pos_ += len;
            col_ += len;
            return t;
        };
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t len = 0;
            while (pos_ + len < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + len])))
                ++len;
            return make(tok::number, len);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t len = 0;
            while (pos_ + len < src_.size()) {
                char d = src_[pos_ + len];
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_') ++len;
                else break;
            }
            std::string word = src_.substr(pos_, len);
            tok k = tok::ident;
            if (word == "if") k = tok::kw_if;
            else if (word == "then") k = tok::kw_then;
            else if (word == "else") k = tok::kw_else;
            else if (word == "true") k = tok::kw_true;
            else if (word == "false") k = tok::kw_false;
            return make(k, len);
        }
        auto two = [&](char a, char b) {
            return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
        };
        if (c == '[') {
            if (pos_ + 2 < src_.size() && src_[pos_ + 2] == ']') {
                switch (src_[pos_ + 1]) {
                    case '+': return make(tok::pw_add, 3);
                    case '-': return make(tok::pw_sub, 3);
                    case '*': return make(tok::pw_mul, 3);
                    case '/': return make(tok::pw_div, 3);
                    default: break;
                }
            }
            throw parse_error(line, col, "expected [+], [-], [*] or [/]");
        }
        if (two('<', '=')) return make(tok::le, 2);
        if (two('>', '=')) return make(tok::ge, 2);
        if (two('=', '=')) return make(tok::eq_eq, 2);
        if (two('!', '=')) return make(tok::ne, 2);
        if (two('&', '&')) return make(tok::and_and, 2);
        if (two('|', '|')) return make(tok::or_or, 2);
        switch (c) {
            case '(': return make(tok::lparen, 1);
            case ')': return make(tok::rparen, 1);
            case '{': return make(tok::lbrace, 1);
            case '}': return make(tok::rbrace, 1);
            case ',': return make(tok::comma, 1);
            case '=': return make(tok::equal, 1);
            case ':': return make(tok::colon, 1);
            case '^': return make(tok::caret, 1);
            case '+': return make(tok::plus, 1);
            case '-': return make(tok::minus, 1);
            case '*': return make(tok::star, 1);
            case '/': return make(tok::slash, 1);
            case '<': return make(tok::lt, 1);
            case '>': return make(tok::gt, 1);
            case '!': return make(tok::bang, 1);
            default:
                throw parse_error(line, col, std::string("unexpected character '") + c + "'");
        }
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

// Precedence, loosest to tightest: || ; && ; ! ; comparisons ; `:` (right-
// associative, `if` lives at this level) ; pointwise ops ; + - ; * / ;
// unary - ; postfix ^ and (i) ; atoms.
class parser {
public:
    parser(std::vector<token> toks) : toks_(std::move(toks)) {}

    program run_program() {
        program p;
        while (peek().kind != tok::end) p.decls.push_back(declaration());
        return p;
    }

    expr_ptr run_expr() {
        expr_ptr e = expression();
        expect(tok::end, "end of input");
        return e;
    }

    capsule run_capsule() {
        expr_ptr v = expression();
        environment env;
        if (peek().kind == tok::ident && peek().text == "where") {
            advance();
            expect(tok::lbrace, "'{'");
            while (true) {
                token name = expect(tok::ident, "binding name");
                expect(tok::equal, "'='");
                expr_ptr rhs = expression();
                if (!env.emplace(name.text, expr_to_stream_value(rhs)).second)
                    throw parse_error(name.line, name.column, "duplicate binding " + name.text);
                if (peek().kind == tok::comma) {
                    advance();
                    continue;
                }
                break;
            }
            expect(tok::rbrace, "'}'");
        }
        expect(tok::end, "end of input");
        return capsule{to_value(v), std::move(env)};
    }

private:
    static std::optional<rational> fold_numeric(const expr_ptr& e) {
        if (const auto* lit = std::get_if<num_lit_expr>(&e->node)) return lit->val;
        if (const auto* bin = std::get_if<num_bin_expr>(&e->node)) {
            auto l = fold_numeric(bin->left);
            auto r = fold_numeric(bin->right);
            if (l && r) return apply_arith(bin->op, *l, *r);
        }
        return std::nullopt;
    }

    static value to_value(const expr_ptr& e) { return expr_to_value(e); }

    const token& peek() const { return toks_[pos_]; }
    const token& advance() { return toks_[pos_++]; }
    token expect(tok k, const std::string& what) {
        if (peek().kind != k)
            throw parse_error(peek().line, peek().column,
                              "expected " + what + ", got '" + describe(peek()) + "'");
        return advance();
    }
    static std::string describe(const token& t) { return t.kind == tok::end ? "end of input" : t.text; }

    function_decl declaration() {
        token name = expect(tok::ident, "function name");
        expect(tok::lparen, "'('");
        std::vector<std::string> params;
        if (peek().kind != tok::rparen) {
            while (true) {
                params.push_back(expect(tok::ident, "parameter name").text);
                if (peek().kind == tok::comma) {
                    advance();
                    continue;
                }
                break;
            }
        }
        expect(tok::rparen, "')'");
        for (std::size_t i = 0; i < params.size(); ++i)
            for (std::size_t j = i + 1; j < params.size(); ++j)
                if (params[i] == params[j])
                    throw parse_error(name.line, name.column,
                                      "duplicate parameter " + params[i] + " in " + name.text);
        expect(tok::equal, "'='");
        params_ = std::set<std::string>(params.begin(), params.end());
        expr_ptr body = expression();
        params_.clear();
        return function_decl{name.text, std::move(params), std::move(body), {}};
    }

    expr_ptr expression() { return or_level(); }

    expr_ptr or_level() {
        expr_ptr l = and_level();
        while (peek().kind == tok::or_or) {
            advance();
            l = make_bool_bin(false, std::move(l), and_level());
        }
        return l;
    }

    expr_ptr and_level() {
        expr_ptr l = not_level();
        while (peek().kind == tok::and_and) {
            advance();
            l = make_bool_bin(true, std::move(l), not_level());
        }
        return l;
    }

    expr_ptr not_level() {
        if (peek().kind == tok::bang) {
            advance();
            return make_not(not_level());
        }
        return cmp_level();
    }

    expr_ptr cmp_level() {
        expr_ptr l = cons_level();
        std::optional<cmp_op> op;
        switch (peek().kind) {
            case tok::le: op = cmp_op::le; break;
            case tok::lt: op = cmp_op::lt; break;
            case tok::eq_eq: op = cmp_op::eq; break;
            case tok::ne: op = cmp_op::ne; break;
            case tok::ge: op = cmp_op::ge; break;
            case tok::gt: op = cmp_op::gt; break;
            default: return l;
        }
        advance();
        return make_cmp(*op, std::move(l), cons_level());
    }

    expr_ptr cons_level() {
        if (peek().kind == tok::kw_if) {
            advance();
            expr_ptr c = or_level();
            expect(tok::kw_then, "'then'");
            expr_ptr t = cons_level();
            expect(tok::kw_else, "'else'");
            expr_ptr e = cons_level();
            return make_if(std::move(c), std::move(t), std::move(e));
        }
        expr_ptr l = pw_level();
        if (peek().kind == tok::colon) {
            advance();
            return make_cons(std::move(l), cons_level());
        }
        return l;
    }

    expr_ptr pw_level() {
        expr_ptr l = add_level();
        while (true) {
            arith_op op;
            switch (peek().kind) {
                case tok::pw_add: op = arith_op::add; break;
                case tok::pw_sub: op = arith_op::sub; break;
                case tok::pw_mul: op = arith_op::mul; break;
                case tok::pw_div: op = arith_op::div; break;
                default: return l;
            }
            advance();
            l = make_pointwise(op, std::move(l), add_level());
        }
    }

    expr_ptr add_level() {
        expr_ptr l = mul_level();
        while (peek().kind == tok::plus || peek().kind == tok::minus) {
            arith_op op = advance().kind == tok::plus ? arith_op::add : arith_op::sub;
            l = make_num_bin(op, std::move(l), mul_level());
        }
        return l;
    }

    expr_ptr mul_level() {
        expr_ptr l = unary_level();
        while (peek().kind == tok::star || peek().kind == tok::slash) {
            arith_op op = advance().kind == tok::star ? arith_op::mul : arith_op::div;
            l = make_num_bin(op, std::move(l), unary_level());
        }
        return l;
    }

    expr_ptr unary_level() {
        if (peek().kind == tok::minus) {
            advance();
            expr_ptr operand = unary_level();
            if (const auto* lit = std::get_if<num_lit_expr>(&operand->node))
                return make_num_lit(-lit->val);
            return make_num_bin(arith_op::sub, make_num_lit(rational(0)), std::move(operand));
        }
        return postfix_level();
    }

    expr_ptr postfix_level() {
        expr_ptr e = atom();
        while (true) {
            if (peek().kind == tok::caret) {
                advance();
                e = make_tail(std::move(e));
            } else if (peek().kind == tok::lparen) {
                advance();
                expr_ptr idx = expression();
                expect(tok::rparen, "')'");
                e = make_index(std::move(e), std::move(idx));
            } else {
                return e;
            }
        }
    }

    expr_ptr atom() {
        const token& t = peek();
        switch (t.kind) {
            case tok::number: {
                advance();
                return make_num_lit(rational::from_decimal(t.text));
            }
            case tok::kw_true:
                advance();
                return make_bool_lit(true);
            case tok::kw_false:
                advance();
                return make_bool_lit(false);
            case tok::lparen: {
                advance();
                expr_ptr e = expression();
                expect(tok::rparen, "')'");
                return e;
            }
            case tok::ident: {
                token name = advance();
                bool is_param = params_.count(name.text) > 0;
                if (!is_param && peek().kind == tok::lparen) {
                    advance();
                    std::vector<expr_ptr> args;
                    if (peek().kind != tok::rparen) {
                        while (true) {
                            args.push_back(expression());
                            if (peek().kind == tok::comma) {
                                advance();
                                continue;
                            }
                            break;
                        }
                    }
                    expect(tok::rparen, "')'");
                    return make_call(name.text, std::move(args));
                }
                return make_var(name.text);
            }
            default:
                throw parse_error(t.line, t.column, "expected an expression, got '" + describe(t) + "'");
        }
    }

    std::vector<token> toks_;
    std::size_t pos_ = 0;
    std::set<std::string> params_;
};

}  // namespace

program parse_program(const std::string& source) {
    return parser(lexer(source).run()).run_program();
}

expr_ptr parse_expr(const std::string& source) {
    return parser(lexer(source).run()).run_expr();
}

capsule parse_capsule(const std::string& source) {
    return parser(lexer(source).run()).run_capsule();
}

namespace {
std::optional<rational> fold_const(const expr_ptr& e) {
    if (const auto* lit = std::get_if<num_lit_expr>(&e->node)) return lit->val;
    if (const auto* bin = std::get_if<num_bin_expr>(&e->node)) {
        auto l = fold_const(bin->left);
        auto r = fold_const(bin->right);
        if (l && r) return apply_arith(bin->op, *l, *r);
    }
    return std::nullopt;
}
}  // namespace

stream_value_ptr expr_to_stream_value(const expr_ptr& e) {
    if (const auto* v = std::get_if<var_expr>(&e->node)) return make_sv_var(v->name);
    if (const auto* sv = std::get_if<stream_value_expr>(&e->node)) return sv->val;
    if (const auto* c = std::get_if<cons_expr>(&e->node)) {
        auto head = fold_const(c->head);
        if (!head) throw sort_error("stream value head must be a numeric constant");
        return make_sv_cons(*head, expr_to_stream_value(c->tail));
    }
    if (const auto* t = std::get_if<tail_expr>(&e->node)) return make_sv_tail(expr_to_stream_value(t->arg));
    if (const auto* p = std::get_if<pointwise_expr>(&e->node))
        return make_sv_pointwise(p->op, expr_to_stream_value(p->left), expr_to_stream_value(p->right));
    throw sort_error("expression does not denote a stream value");
}

value expr_to_value(const expr_ptr& e) {
    if (auto n = fold_const(e)) return value{*n};
    if (const auto* b = std::get_if<bool_lit_expr>(&e->node)) return value{b->val};
    return value{expr_to_stream_value(e)};
}

}  // namespace streamcalc
