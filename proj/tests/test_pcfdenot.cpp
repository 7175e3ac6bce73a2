#include <functional>

#include "doctest.h"
#include "lcw/names.hpp"
#include "lcw/pcfdenot.hpp"
#include "lcw/syntax.hpp"
#include "pcf_corpus.hpp"
#include "oracles.hpp"

using namespace lcw;
using namespace lcw::pcfdenot;
using lcw::typed::Kind;
using lcw::testing::factorial;
using lcw::testing::factorial_oracle;
using lcw::testing::fix_steps;
using lcw::testing::kAdd;
using lcw::testing::mult_text;

namespace {

TypedTerm P(const std::string& text) { return syntax::parse_typed(text, Dialect::Pcf); }
TypedTerm PP(const std::string& text) { return syntax::parse_typed(text, Dialect::ParallelPcf); }

bool is_nat(const DomValue& v, unsigned long n) { return v.kind == DomValue::Kind::Nat && v.nat == n; }
bool is_bool(const DomValue& v, bool b) { return v.kind == DomValue::Kind::Bool && v.boolean == b; }

}  // namespace

TEST_CASE("denotations of PCF constants and divergence") {
    for (std::size_t fuel : {0, 1, 5, 50}) {
        CAPTURE(fuel);
        CHECK(is_nat(denote(P("succ zero"), fuel), 1));
        CHECK(denote(P("Y (\\x:nat. x)"), fuel).is_bottom());
        CHECK(is_nat(denote(P("pred zero"), fuel), 0));
        CHECK(is_nat(denote(P("pred 4"), fuel), 3));
        CHECK(is_bool(denote(P("iszero 2"), fuel), false));
        CHECK(is_bool(denote(P("if T then F else T"), fuel), false));
        CHECK(is_bool(denote(P("if F then F else T"), fuel), true));
        CHECK(is_nat(denote(P("pi2 <Y (\\x:nat. x), 7>"), fuel), 7));
        CHECK(is_nat(denote(P("(\\x:nat. zero) (Y (\\x:nat. x))"), fuel), 0));
        CHECK(denote(P("*"), fuel).kind == DomValue::Kind::Unit);
        CHECK(denote(P("Y (\\u:1. u)"), fuel).kind == DomValue::Kind::Unit);
    }
    Denotation d = denote_counted({}, P("Y (\\x:nat. x)"), {}, 12);
    CHECK(d.unfoldings == 12);
    CHECK(d.starved);

    Context ctx = syntax::parse_context("x:nat, b:bool");
    Env env{{"x", DomValue::of_nat(4)}, {"b", DomValue::bottom()}};
    CHECK(is_nat(denote(ctx, P("succ x"), env, 0), 5));
    CHECK(denote(ctx, P("if b then x else zero"), env, 0).is_bottom());
    CHECK_THROWS_AS(denote(ctx, P("x"), Env{{"x", DomValue::of_nat(1)}}, 0), UsageError);
    CHECK_THROWS_AS(denote(P("succ T"), 0), typed::TypeError);

    CHECK(to_string(DomValue::bottom()) == "⊥");
    CHECK(to_string(of_result(P("3"))) == "3");
    CHECK_THROWS_AS(ground_equal(denote(P("\\x:nat. x"), 0), DomValue::of_nat(0)), UsageError);
}

TEST_CASE("factorial of 3 and its fuel threshold") {
    TypedTerm fact3 = TypedTerm::app(factorial(), P("3"));
    Denotation d = denote_counted({}, fact3, {}, 100000);
    REQUIRE(is_nat(d.value, factorial_oracle(3)));
    CHECK_FALSE(d.starved);
    const std::size_t threshold = d.unfoldings;
    MESSAGE("factorial 3 needs " << threshold << " unfoldings");
    CHECK(threshold == fix_steps(fact3, 100000));
    for (std::size_t f = 0; f < threshold; ++f) {
        CHECK(denote(fact3, f).is_bottom());
    }
    for (std::size_t f = threshold; f < threshold + 20; ++f) {
        CHECK(is_nat(denote(fact3, f), 6));
    }
    CHECK(is_nat(denote(TypedTerm::app(factorial(), P("4")), 100000), factorial_oracle(4)));
    CHECK(is_nat(denote(TypedTerm::app(factorial(), P("0")), 1), 1));
}

TEST_CASE("strictness of succ, pred, iszero and if") {
    testing::PcfGen gen(4242);
    int bottoms = 0;
    for (int i = 0; i < 300; ++i) {
        TypedTerm n = gen.program(Type::nat(), 10);
        TypedTerm b = gen.program(Type::boolean(), 10);
        CAPTURE(syntax::print(n));
        CAPTURE(syntax::print(b));
        for (std::size_t fuel : {0, 2, 6}) {
            DomValue dn = denote(n, fuel);
            DomValue db = denote(b, fuel);
            if (dn.is_bottom()) ++bottoms;
            CHECK(denote(TypedTerm::succ(n), fuel).is_bottom() == dn.is_bottom());
            CHECK(denote(TypedTerm::pred(n), fuel).is_bottom() == dn.is_bottom());
            CHECK(denote(TypedTerm::iszero(n), fuel).is_bottom() == dn.is_bottom());
            DomValue ite = denote(TypedTerm::if_then_else(b, P("1"), P("2")), fuel);
            CHECK(ite.is_bottom() == db.is_bottom());
            if (!db.is_bottom()) CHECK(is_nat(ite, db.boolean ? 1 : 2));
            if (!dn.is_bottom()) {
                CHECK(is_nat(denote(TypedTerm::succ(n), fuel), dn.nat + 1));
                CHECK(is_nat(denote(TypedTerm::pred(n), fuel), dn.nat == 0 ? 0 : dn.nat - 1));
                CHECK(is_bool(denote(TypedTerm::iszero(n), fuel), dn.nat == 0));
            }
        }
    }
    CHECK(bottoms > 0);
}

TEST_CASE("fuel monotonicity and adequacy on the PCF corpus") {
    testing::PcfGen gen(9001);
    const std::size_t fuel = 400;
    int converged = 0;
    int diverged = 0;
    for (int i = 0; i < 1000; ++i) {
        TypedTerm m = gen.program(i % 2 ? Type::nat() : Type::boolean(), 4 + static_cast<int>(gen.pick(14)));
        CAPTURE(syntax::print(m));
        DomValue prev = denote(m, 0);
        for (std::size_t f = 1; f <= 12; ++f) {
            DomValue next = denote(m, f);
            CHECK(flat_leq(prev, next));
            prev = next;
        }
        AdequacyVerdict v = adequacy_check(m, fuel, 2 * fuel);
        CHECK(v.consistent);
        if (v.operational.ok()) {
            ++converged;
            DomValue expected = of_result(v.operational.term);
            REQUIRE(v.threshold);
            CHECK(*v.threshold <= fuel);
            CHECK(*v.threshold == fix_steps(m, fuel));
            for (std::size_t f : {*v.threshold, fuel, fuel + fuel / 2, 2 * fuel}) {
                CHECK(ground_equal(denote(m, f), expected));
            }
            if (*v.threshold > 0) CHECK(denote(m, *v.threshold - 1).is_bottom());
        } else {
            ++diverged;
        }
    }
    MESSAGE("converged " << converged << ", diverged " << diverged);
    CHECK(converged > 500);
    CHECK(diverged > 5);
}

TEST_CASE("adequacy examples") {
    AdequacyVerdict v = adequacy_check(P("iszero (pred (succ zero))"), 100, 10);
    CHECK(v.operational.term.is(Kind::True));
    CHECK(is_bool(v.denotation, true));
    CHECK(v.consistent);
    CHECK(v.threshold == std::size_t{0});

    v = adequacy_check(P("zero"), 1, 0);
    CHECK(v.consistent);
    CHECK(is_nat(v.denotation, 0));

    for (std::size_t f : {0, 10, 100}) {
        v = adequacy_check(P("Y (\\x:nat. x)"), 100, f);
        CHECK(v.operational.outcome == pcf::Outcome::FuelExhausted);
        CHECK(v.denotation.is_bottom());
        CHECK(v.consistent);
        CHECK_FALSE(v.threshold);
    }
    CHECK_THROWS_AS(adequacy_check(P("\\x:nat. x"), 10, 10), UsageError);
    CHECK_THROWS_AS(adequacy_check(P("<zero, zero>"), 10, 10), UsageError);
}

TEST_CASE("soundness spot checks for the axioms") {
    const std::vector<std::size_t> fuels{0, 1, 2, 3, 5, 8, 13, 40};
    struct Instance {
        std::string lhs;
        std::string rhs;
        long offset;
    };
    const std::string g = "(\\f:nat -> nat. \\x:nat. zero)";
    const std::string fact = syntax::print(factorial());
    const std::string fact_body = syntax::print(factorial().child(0));
    const std::vector<Instance> cases{
        {"pred zero", "zero", 0},
        {"pred (succ 3)", "3", 0},
        {"iszero zero", "T", 0},
        {"iszero (succ 2)", "F", 0},
        {"if T then 4 else Y (\\x:nat. x)", "4", 0},
        {"if F then Y (\\x:nat. x) else 5", "5", 0},
        {"succ (pred zero)", "succ zero", 0},
        {"iszero (if iszero zero then pred zero else 1)", "iszero zero", 0},
        {"(\\x:nat. succ x) 2", "succ 2", 0},
        {"(\\x:nat. zero) (Y (\\x:nat. x))", "zero", 0},
        {"pi1 <pred 2, Y (\\x:bool. x)>", "1", 0},
        {"Y " + g + " 5", g + " (Y " + g + ") 5", 1},
        {"(" + fact + ") 3", "(" + fact_body + ") (" + fact + ") 3", 1},
    };
    for (const auto& c : cases) {
        CAPTURE(c.lhs);
        CAPTURE(c.rhs);
        SoundnessSpot s = soundness_spot(P(c.lhs), P(c.rhs), 5000, fuels);
        CHECK(s.joined);
        CHECK(s.equal);
        CHECK(s.offset == c.offset);
        for (const auto& sample : s.samples) {
            CHECK(ground_equal(sample.m, sample.n));
        }
    }
    // A derived equation needs more unfoldings than the default bound allows.
    TypedTerm fact2 = TypedTerm::app(factorial(), P("2"));
    CHECK_FALSE(soundness_spot(fact2, P("2"), 100000, fuels).joined);
    pcf::AxOptions generous;
    generous.y_bound = 10000;
    SoundnessSpot s = soundness_spot(fact2, P("2"), 100000, fuels, generous);
    CHECK(s.joined);
    CHECK(s.equal);
    CHECK(static_cast<std::size_t>(s.offset) == denote_counted({}, fact2, {}, 100000).unfoldings);
    CHECK_THROWS_AS(soundness_spot(P("zero"), P("T"), 10, fuels), UsageError);
    CHECK_THROWS_AS(soundness_spot(P("\\x:nat. x"), P("\\x:nat. x"), 10, fuels), UsageError);
}

TEST_CASE("monotone maps between finite posets") {
    FinitePoset b = FinitePoset::lifted_bool();
    FinitePoset one = FinitePoset::point();
    std::vector<MonotoneMap> maps = monotone_maps(b, b);
    CHECK(maps.size() == 11);
    for (const auto& f : maps) CHECK(is_monotone(b, b, f));

    // Independent count: all 27 tables filtered by the definition.
    int count = 0;
    for (std::size_t x = 0; x < 27; ++x) {
        MonotoneMap f{x % 3, (x / 3) % 3, x / 9};
        bool ok = true;
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                if (b.leq(i, j) && !b.leq(f[i], f[j])) ok = false;
            }
        }
        count += ok;
    }
    CHECK(count == 11);

    CHECK(monotone_maps(one, b).size() == 3);
    CHECK(monotone_maps(b, one).size() == 1);
    CHECK(maps.front() == MonotoneMap{0, 0, 0});
    CHECK(std::is_sorted(maps.begin(), maps.end()));

    FinitePoset bb = function_poset(b, b);
    CHECK(bb.size() == 11);
    REQUIRE(bb.bottom());
    CHECK(bb.label(*bb.bottom()) == "[⊥↦⊥, T↦⊥, F↦⊥]");
    // Maximal elements: the two constants and the strict identity and negation.
    int maximal = 0;
    for (std::size_t i = 0; i < bb.size(); ++i) {
        bool top = true;
        for (std::size_t j = 0; j < bb.size(); ++j) {
            if (i != j && bb.leq(i, j)) top = false;
        }
        maximal += top;
    }
    CHECK(maximal == 4);

    CHECK_THROWS_AS(monotone_maps(FinitePoset::flat({"a", "b", "c", "d", "e", "f"}), b), UsageError);
    CHECK_THROWS_AS(FinitePoset({"a", "b"}, {{true, true}, {true, true}}), UsageError);
    CHECK_THROWS_AS(FinitePoset({"a", "b"}, {{false, true}, {false, true}}), UsageError);
    CHECK_THROWS_AS(FinitePoset({"a", "b", "c"}, {{true, true, false}, {false, true, true}, {false, false, true}}),
                    UsageError);
}

TEST_CASE("least fixed points on finite posets") {
    FinitePoset b = FinitePoset::lifted_bool();
    const std::size_t bot = 0;
    const std::size_t t = *b.index_of("T");
    const std::size_t f = *b.index_of("F");
    CHECK(least_fixed_point(b, {bot, t, f}) == bot);
    CHECK(least_fixed_point(b, {t, t, t}) == t);
    MonotoneMap g(3);
    g[bot] = bot;
    g[f] = t;
    g[t] = t;
    CHECK(least_fixed_point(b, g) == bot);
    CHECK_THROWS_AS(least_fixed_point(b, {t, f, f}), UsageError);
    CHECK_THROWS_AS(least_fixed_point(FinitePoset::flat({"a"}), {0, 0, 0}), UsageError);

    // Every monotone endomap of B and of B -> B: the result is a fixed point below all others.
    for (const FinitePoset& p : {b, function_poset(b, b)}) {
        if (p.size() > 6) continue;
        for (const auto& h : monotone_maps(p, p)) {
            std::size_t x = least_fixed_point(p, h);
            CHECK(h[x] == x);
            for (std::size_t y = 0; y < p.size(); ++y) {
                if (h[y] == y) CHECK(p.leq(x, y));
            }
        }
    }
    // A five-element poset with a least element: ⊥ < a, b < c, and d above a only.
    FinitePoset q({"⊥", "a", "b", "c", "d"}, {{true, true, true, true, true},
                                               {false, true, false, true, true},
                                               {false, false, true, true, false},
                                               {false, false, false, true, false},
                                               {false, false, false, false, true}});
    int checked = 0;
    for (const auto& h : monotone_maps(q, q)) {
        std::size_t x = least_fixed_point(q, h);
        CHECK(h[x] == x);
        for (std::size_t y : fixed_points(q, h)) CHECK(q.leq(x, y));
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_CASE("parallel or in the cpo semantics") {
    CHECK(is_bool(denote(PP("POR T (Y (\\x:bool. x))"), 10, Dialect::ParallelPcf), true));
    CHECK(is_bool(denote(PP("POR (Y (\\x:bool. x)) T"), 10, Dialect::ParallelPcf), true));
    CHECK(is_bool(denote(PP("POR F F"), 0, Dialect::ParallelPcf), false));
    CHECK(denote(PP("POR F (Y (\\x:bool. x))"), 10, Dialect::ParallelPcf).is_bottom());

    TypedTerm tester = pcf::por_test_term();
    CHECK(is_bool(denote(TypedTerm::app(tester, pcf::por_function()), 20, Dialect::ParallelPcf), true));
    for (const char* candidate : {"\\a:bool. \\b:bool. a", "\\a:bool. \\b:bool. b",
                                  "\\a:bool. \\b:bool. if a then T else b"}) {
        CAPTURE(candidate);
        for (std::size_t fuel : {0, 5, 50}) {
            CHECK(denote(TypedTerm::app(tester, P(candidate)), fuel).is_bottom());
        }
    }
}
