#include "corpus.hpp"
#include "doctest.h"
#include "lcw/encodings.hpp"
#include "lcw/names.hpp"
#include "oracles.hpp"

using namespace lcw;
using namespace lcw::encodings;
using lcw::testing::U;
using untyped::alpha_eq;
using untyped::Mode;
using lcw::testing::fib_oracle;
using lcw::testing::grid;

namespace {

Term nf(const Term& t, std::size_t fuel = 100000) {
    auto r = untyped::normalize(t, Mode::Beta, fuel);
    REQUIRE_FALSE(r.exhausted);
    return r.term;
}

}  // namespace

TEST_CASE("booleans") {
    CHECK(alpha_eq(church_bool(true), U("\\x y. x")));
    CHECK(alpha_eq(church_bool(false), U("\\x y. y")));
    for (bool b : {true, false}) {
        CHECK(match_bool(church_bool(b)) == b);
    }
    auto ops = bool_ops();
    for (bool a : {true, false}) {
        CHECK(match_bool(nf(Term::app(ops.at("not"), church_bool(a)))) == !a);
        for (bool b : {true, false}) {
            CHECK(match_bool(nf(untyped::apply(ops.at("and"), {church_bool(a), church_bool(b)}))) ==
                  (a && b));
            CHECK(match_bool(nf(untyped::apply(ops.at("or"), {church_bool(a), church_bool(b)}))) ==
                  (a || b));
        }
    }
    auto ite = untyped::apply(ops.at("if_then_else"), {church_bool(true), U("\\u. u"), U("\\v w. v")});
    CHECK(alpha_eq(nf(ite), U("\\u. u")));
    for (const auto& [name, t] : ops) {
        CHECK_MESSAGE(untyped::free_vars(t).empty(), name);
    }
}

TEST_CASE("numerals") {
    CHECK(alpha_eq(church_numeral(0), U("\\f x. x")));
    CHECK(alpha_eq(church_numeral(2), U("\\f x. f (f x)")));
    CHECK(alpha_eq(church_numeral(0), church_bool(false)));
    for (unsigned long n = 0; n <= 50; ++n) {
        auto d = decode_numeral(church_numeral(n), 10);
        CHECK(d.status == DecodeStatus::Ok);
        CHECK(d.value == n);
    }
    CHECK(decode_numeral(U("\\f x. f (f (f x))"), 10).value == 3);
    CHECK(decode_numeral(U("\\x. x"), 10).status == DecodeStatus::NotANumeral);
    CHECK(decode_numeral(U("\\f f. f x"), 10).status == DecodeStatus::NotANumeral);
    CHECK(decode_numeral(U("(\\x. x x) (\\x. x x)"), 10).status == DecodeStatus::FuelExhausted);
}

TEST_CASE("arithmetic") {
    auto ar = arith_ops();
    for (const auto& [name, t] : ar) {
        CHECK_MESSAGE(untyped::free_vars(t).empty(), name);
    }
    CHECK(decode_numeral(untyped::apply(ar.at("add"), {church_numeral(2), church_numeral(3)}), 1000)
              .value == 5);
    CHECK(decode_numeral(untyped::apply(ar.at("mult"), {church_numeral(2), church_numeral(3)}), 1000)
              .value == 6);
    CHECK(match_bool(nf(Term::app(ar.at("iszero"), church_numeral(0)))) == true);
    CHECK(match_bool(nf(Term::app(ar.at("iszero"), church_numeral(3)))) == false);
    for (unsigned long n = 0; n <= 20; ++n) {
        CHECK(decode_numeral(Term::app(ar.at("succ"), church_numeral(n)), 1000).value == n + 1);
    }
    auto plus = [](const std::vector<unsigned long>& v) { return v[0] + v[1]; };
    auto times = [](const std::vector<unsigned long>& v) { return v[0] * v[1]; };
    auto power = [](const std::vector<unsigned long>& v) {
        unsigned long r = 1;
        for (unsigned long i = 0; i < v[1]; ++i) r *= v[0];
        return r;
    };
    auto dec = [](const std::vector<unsigned long>& v) { return v[0] == 0 ? 0 : v[0] - 1; };
    CHECK(represents(ar.at("add"), plus, 2, grid(4, 2), 10000).ok());
    CHECK(represents(ar.at("mult"), times, 2, grid(4, 2), 10000).ok());
    CHECK(represents(ar.at("exp"), power, 2, grid(4, 2), 100000).ok());
    CHECK(represents(ar.at("pred"), dec, 1, grid(5, 1), 10000).ok());
    auto wrong = represents(ar.at("mult"), plus, 2, {{2, 3}}, 10000);
    REQUIRE(wrong.failures.size() == 1);
    CHECK(wrong.failures[0].actual == 6u);
    CHECK(wrong.failures[0].expected == 5u);
    CHECK_THROWS_AS(represents(ar.at("add"), plus, 2, {}, 10), UsageError);
}

TEST_CASE("fixed point combinators") {
    auto fp = fixpoint_combinators();
    Term g = Term::var("g");
    Term theta_g = Term::app(fp.at("theta"), g);
    auto graph = untyped::reduction_graph(theta_g, 50, 4);
    CHECK(graph.find(untyped::canonical_key(Term::app(g, theta_g))) != nullptr);

    Term y_g = Term::app(fp.at("y"), g);
    auto yg = untyped::reduction_graph(y_g, 50, 6);
    CHECK(yg.find(untyped::canonical_key(Term::app(g, y_g))) == nullptr);
    auto target = untyped::reduction_graph(Term::app(g, y_g), 50, 6);
    bool joined = false;
    for (const auto& k : yg.keys) {
        if (target.find(k)) joined = true;
    }
    CHECK(joined);
}

TEST_CASE("data structures") {
    Term m = U("\\a. a");
    Term n = U("\\b c. c");
    CHECK(alpha_eq(nf(Term::app(pi1(), pair(m, n))), m));
    CHECK(alpha_eq(nf(Term::app(pi2(), pair(m, n))), n));
    Term m3 = U("\\d. d d");
    CHECK(alpha_eq(nf(Term::app(proj(3, 2), tuple({m, n, m3}))), n));
    CHECK(alpha_eq(nf(Term::app(proj(3, 3), tuple({m, n, m3}))), m3));
    CHECK_THROWS_AS(proj(3, 0), UsageError);
    CHECK_THROWS_AS(proj(3, 4), UsageError);
    CHECK(alpha_eq(pair(U("z"), U("w")), U("\\z1. z1 z w")));

    Term l = list({church_numeral(1), church_numeral(2), church_numeral(3)});
    CHECK(decode_numeral(Term::app(addlist(), l), 100000).value == 6);
    Term t = node(leaf(church_numeral(2)), node(leaf(church_numeral(1)), leaf(church_numeral(4))));
    CHECK(decode_numeral(Term::app(addtree(), t), 100000).value == 7);
}

TEST_CASE("recursion") {
    CHECK(decode_numeral(Term::app(fact(), church_numeral(2)), 100000).value == 2);
    CHECK(decode_numeral(Term::app(fact(), church_numeral(3)), 100000).value == 6);
    for (unsigned long n = 0; n <= 5; ++n) {
        auto d = decode_numeral(Term::app(fib(), church_numeral(n)), 1000000);
        CHECK(d.status == DecodeStatus::Ok);
        CHECK(d.value == fib_oracle(n));
    }
    CHECK(untyped::free_vars(fact()).empty());
    CHECK(untyped::free_vars(fib()).empty());
}
