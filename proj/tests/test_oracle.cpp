#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <vector>

#include "streamcalc/errors.hpp"
#include "streamcalc/eval.hpp"
#include "streamcalc/indexing.hpp"
#include "streamcalc/oracle.hpp"
#include "streamcalc/parser.hpp"
#include "streamcalc/wellformed.hpp"

using namespace streamcalc;

namespace {

program corpus() {
    std::ifstream in(STREAMCALC_CORPUS_DIR "/streams.sc");
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    program p = parse_program(buf.str());
    validate(p);
    return p;
}

stream_value_ptr sv_of(const std::string& text) { return expr_to_stream_value(parse_expr(text)); }

partial_prefix known(std::vector<long> vals) {
    partial_prefix p;
    for (long v : vals) p.emplace_back(rational(v));
    return p;
}

std::size_t count_unknown(const prefix_assignment& a) {
    std::size_t n = 0;
    for (const auto& [name, p] : a)
        for (const auto& slot : p)
            if (!slot.has_value()) ++n;
    return n;
}

}  // namespace

TEST_CASE("prefix equations for each constructor") {
    prefix_assignment a{{"x", known({1, 2, 3, 4})}, {"y", known({0, 1, 2, 3})}};
    SUBCASE("variable") {
        CHECK(sem_eval_prefix(sv_of("x"), a, 4) == known({1, 2, 3, 4}));
    }
    SUBCASE("cons shifts right") {
        CHECK(sem_eval_prefix(sv_of("0:x"), a, 4) == known({0, 1, 2, 3}));
    }
    SUBCASE("tail shifts left and loses the last position") {
        partial_prefix got = sem_eval_prefix(sv_of("y^"), a, 4);
        REQUIRE(got.size() == 4);
        CHECK(got[0] == rational(1));
        CHECK(got[1] == rational(2));
        CHECK(got[2] == rational(3));
        CHECK_FALSE(got[3].has_value());
    }
    SUBCASE("each tail nesting level loses one position") {
        partial_prefix got = sem_eval_prefix(sv_of("y^^"), a, 4);
        CHECK(got[0] == rational(2));
        CHECK(got[1] == rational(3));
        CHECK_FALSE(got[2].has_value());
        CHECK_FALSE(got[3].has_value());
    }
    SUBCASE("pointwise combines positionwise") {
        prefix_assignment b{{"x", known({0, 1})}, {"y", known({1, 1})}};
        CHECK(sem_eval_prefix(sv_of("x [+] y"), b, 2) == known({1, 2}));
        CHECK(sem_eval_prefix(sv_of("x [*] y"), b, 2) == known({0, 1}));
        CHECK(sem_eval_prefix(sv_of("x [/] y"), b, 2) == known({0, 1}));
        CHECK(sem_eval_prefix(sv_of("x [-] y"), b, 2) == known({-1, 0}));
    }
    SUBCASE("every variable must be assigned") {
        CHECK_THROWS_AS(sem_eval_prefix(sv_of("z"), a, 4), undefined_variable);
        CHECK_THROWS_AS(sem_eval_prefix(sv_of("0:(x [+] z)"), a, 4), undefined_variable);
    }
}

TEST_CASE("unknowns are strict through operators") {
    prefix_assignment a{{"x", known({0, 7})}, {"u", unknown_prefix(2)}};
    partial_prefix got = sem_eval_prefix(sv_of("x [*] u"), a, 2);
    CHECK_FALSE(got[0].has_value());  // no 0 * unknown = 0 shortcut
    CHECK_FALSE(got[1].has_value());
    got = sem_eval_prefix(sv_of("u [+] x"), a, 2);
    CHECK_FALSE(got[0].has_value());
    got = sem_eval_prefix(sv_of("5:u"), a, 2);
    CHECK(got[0] == rational(5));
    CHECK_FALSE(got[1].has_value());
}

TEST_CASE("division by zero needs both positions known") {
    prefix_assignment a{{"x", known({1, 1})}, {"z", known({0, 1})}, {"u", unknown_prefix(2)}};
    CHECK_THROWS_AS(sem_eval_prefix(sv_of("x [/] z"), a, 2), division_by_zero);
    CHECK_NOTHROW(sem_eval_prefix(sv_of("u [/] z"), a, 2));  // unknown numerator masks it
    CHECK_NOTHROW(sem_eval_prefix(sv_of("x [/] z^"), a, 2));  // shifted divisor is 1
}

TEST_CASE("fixpoint iteration on the naturals") {
    environment env{{"x", sv_of("0:(x [+] y)")}, {"y", sv_of("1:y")}};
    prefix_assignment sol = kleene_prefix(env, {}, 6);
    CHECK(sol.at("x") == known({0, 1, 2, 3, 4, 5}));
    CHECK(sol.at("y") == known({1, 1, 1, 1, 1, 1}));
}

TEST_CASE("undetermined environments stay unknown") {
    SUBCASE("any stream satisfies x = x") {
        environment env{{"x", sv_of("x")}};
        prefix_assignment sol = kleene_prefix(env, {}, 4);
        CHECK(sol.at("x") == unknown_prefix(4));
    }
    SUBCASE("no stream satisfies x = x + ones") {
        environment env{{"x", sv_of("x [+] y")}, {"y", sv_of("1:y")}};
        prefix_assignment sol = kleene_prefix(env, {}, 4);
        CHECK(sol.at("x") == unknown_prefix(4));
        CHECK(sol.at("y") == known({1, 1, 1, 1}));
    }
}

TEST_CASE("the strict oracle and the binding check agree on the blind spot") {
    // the unique solution is all zeros, but neither side can see it: the
    // checker rejects the binding and the oracle derives nothing for z
    environment env{{"z", sv_of("y [*] z")}, {"y", sv_of("0:y")}};
    CHECK_FALSE(binding_well_defined(env, "z"));
    prefix_assignment sol = kleene_prefix(env, {}, 6);
    CHECK(sol.at("z") == unknown_prefix(6));
    CHECK(sol.at("y") == known({0, 0, 0, 0, 0, 0}));
}

TEST_CASE("boundary prefixes feed free variables") {
    environment env{{"x", sv_of("0:y")}};
    SUBCASE("full boundary") {
        prefix_assignment sol = kleene_prefix(env, {{"y", known({5, 6, 7, 8})}}, 4);
        CHECK(sol.at("x") == known({0, 5, 6, 7}));
    }
    SUBCASE("short boundary pads with unknowns") {
        prefix_assignment sol = kleene_prefix(env, {{"y", known({5})}}, 3);
        REQUIRE(sol.at("x").size() == 3);
        CHECK(sol.at("x")[0] == rational(0));
        CHECK(sol.at("x")[1] == rational(5));
        CHECK_FALSE(sol.at("x")[2].has_value());
    }
    SUBCASE("missing boundary is an error") {
        CHECK_THROWS_AS(kleene_prefix(env, {}, 4), undefined_variable);
    }
}

TEST_CASE("iteration refines monotonically and stops at the fixpoint") {
    environment env{{"x", sv_of("0:(x [+] y)")}, {"y", sv_of("1:y")}};
    std::vector<prefix_assignment> rounds;
    prefix_assignment sol =
        kleene_prefix(env, {}, 6, [&](const prefix_assignment& a) { rounds.push_back(a); });
    REQUIRE(rounds.size() >= 2);
    CHECK(rounds.back() == sol);
    CHECK(rounds[rounds.size() - 2] == sol);  // last round changed nothing
    for (std::size_t r = 1; r < rounds.size(); ++r) {
        CHECK(count_unknown(rounds[r]) <= count_unknown(rounds[r - 1]));
        for (const auto& [name, prev] : rounds[r - 1])
            for (std::size_t i = 0; i < prev.size(); ++i)
                if (prev[i].has_value()) CHECK(rounds[r].at(name)[i] == prev[i]);
    }
    SUBCASE("a fixpoint on the first round is observed once") {
        std::size_t calls = 0;
        kleene_prefix({{"x", sv_of("x")}}, {}, 4,
                      [&](const prefix_assignment&) { ++calls; });
        CHECK(calls == 1);
    }
}

TEST_CASE("oracle agreement on evaluated corpus streams") {
    program p = corpus();
    for (const char* src : {"repeat(0)", "one_two()", "nat()", "fib()", "fact()", "sum(nat())",
                            "incr(nat())", "avg(3, nat())", "sum_expn(1)", "pow(2)",
                            "nat_to_pow(2)", "aggr(3, nat())"}) {
        CAPTURE(std::string(src));
        capsule c = evaluate(p, parse_expr(src));
        // bindings read at most 4 positions ahead through nested tails, so a
        // run at probe + 4 determines every probed position
        const std::size_t probe = 50, n = probe + 4;
        prefix_assignment sol = kleene_prefix(c.env, {}, n);
        for (const auto& [name, prefix_vals] : sol) {
            CAPTURE(name);
            for (std::size_t i = 0; i < probe; ++i) {
                REQUIRE(prefix_vals[i].has_value());
                CHECK(*prefix_vals[i] == at(c.env, make_sv_var(name), i));
            }
        }
        partial_prefix val = sem_eval_prefix(c.val.stream(), sol, n);
        std::vector<rational> direct = prefix(c.env, c.val.stream(), probe);
        for (std::size_t i = 0; i < probe; ++i) {
            REQUIRE(val[i].has_value());
            CHECK(*val[i] == direct[i]);
        }
    }
}

TEST_CASE("prefix equivalence of capsules") {
    program p = corpus();
    CHECK_FALSE(prefix_equiv(evaluate(p, parse_expr("one_two()")),
                             evaluate(p, parse_expr("two_one()")), 10));
    CHECK(prefix_equiv(evaluate(p, parse_expr("nat()")), evaluate(p, parse_expr("nat()")), 50));
    capsule ones = evaluate(p, parse_expr("repeat(1)"));
    capsule nat = evaluate(p, parse_expr("nat()"));
    // the helper binding of the naturals environment is the all-ones stream
    CHECK(prefix_equiv(ones, capsule{value{make_sv_var("y")},
                                     environment{{"x", sv_of("0:(x [+] y)")}, {"y", sv_of("1:y")}}},
                       50));
    CHECK_FALSE(prefix_equiv(ones, nat, 1));
    CHECK(prefix_equiv(evaluate(p, parse_expr("incr(nat())")),
                       evaluate(p, parse_expr("nat()^")), 50));
}

TEST_CASE("closed forms") {
    rational two(2), one(1);
    CHECK(closed_form(closed_form_kind::nat, 0, 0) == rational(0));
    CHECK(closed_form(closed_form_kind::nat, 0, 41) == rational(41));
    CHECK(closed_form(closed_form_kind::fib, 0, 0) == rational(0));
    CHECK(closed_form(closed_form_kind::fib, 0, 1) == rational(1));
    CHECK(closed_form(closed_form_kind::fib, 0, 10) == rational(55));
    CHECK(closed_form(closed_form_kind::fact, 0, 0) == rational(1));
    CHECK(closed_form(closed_form_kind::fact, 0, 5) == rational(120));
    CHECK(closed_form(closed_form_kind::pow, two, 10) == rational(1024));
    CHECK(closed_form(closed_form_kind::pow, rational(1, 2), 3) == rational(1, 8));
    CHECK(closed_form(closed_form_kind::nat_to_pow, two, 7) == rational(49));
    CHECK(closed_form(closed_form_kind::nat_to_pow, rational(3), 2) == rational(8));
    CHECK(closed_form(closed_form_kind::sum_nat, 0, 20) == rational(210));
    CHECK(closed_form(closed_form_kind::aggr3_nat, 0, 5) == rational(18));
    CHECK(closed_form(closed_form_kind::expn, one, 4) == rational(65, 24));
    CHECK(closed_form(closed_form_kind::expn, two, 3) == rational(19, 3));
    CHECK(closed_form(closed_form_kind::expn, one, 0) == rational(1));
}

TEST_CASE("closed forms match the interpreted corpus") {
    program p = corpus();
    auto probe = [&](const char* src, closed_form_kind kind, const rational& k, index_t n) {
        CAPTURE(src);
        capsule c = evaluate(p, parse_expr(src));
        for (index_t i = 0; i < n; ++i)
            CHECK(at(c.env, c.val.stream(), i) == closed_form(kind, k, i));
    };
    probe("nat()", closed_form_kind::nat, 0, 40);
    probe("fib()", closed_form_kind::fib, 0, 30);
    probe("fact()", closed_form_kind::fact, 0, 15);
    probe("pow(2)", closed_form_kind::pow, rational(2), 20);
    probe("nat_to_pow(3)", closed_form_kind::nat_to_pow, rational(3), 12);
    probe("sum(nat())", closed_form_kind::sum_nat, 0, 25);
    probe("aggr(3, nat())", closed_form_kind::aggr3_nat, 0, 25);
    probe("sum_expn(1)", closed_form_kind::expn, rational(1), 15);
    probe("sum_expn(3)", closed_form_kind::expn, rational(3), 12);
}
