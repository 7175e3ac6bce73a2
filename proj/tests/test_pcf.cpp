#include <map>
#include <set>

#include "doctest.h"
#include "lcw/pcf.hpp"
#include "lcw/stlc.hpp"
#include "lcw/syntax.hpp"
#include "pcf_corpus.hpp"
#include "typed_corpus.hpp"
#include "oracles.hpp"

using namespace lcw;
using namespace lcw::pcf;
using lcw::testing::Ctx;
using lcw::testing::Ty;
using lcw::typed::Kind;
using lcw::testing::successors;

namespace {

TypedTerm P(const std::string& text) { return syntax::parse_typed(text, Dialect::Pcf); }
TypedTerm PP(const std::string& text) { return syntax::parse_typed(text, Dialect::ParallelPcf); }

bool same(const TypedTerm& a, const TypedTerm& b) { return typed::alpha_eq(a, b); }

struct Tally {
    std::map<std::string, int> rules;
    int converged = 0;
    int exhausted = 0;
};

}  // namespace

TEST_CASE("PCF typing") {
    CHECK(pcf_typecheck({}, P("Y (\\x:nat. x)")) == Type::nat());
    CHECK(pcf_typecheck({}, P("iszero zero")) == Type::boolean());
    CHECK_THROWS_AS(pcf_typecheck({}, P("succ T")), typed::TypeError);
    CHECK(pcf_typecheck({}, P("\\p:nat * 1. if iszero (pi1 p) then pi2 p else *")) == Ty("nat * 1 -> 1"));
    CHECK(pcf_typecheck({}, P("Y (\\f:nat -> nat. \\n:nat. n)")) == Ty("nat -> nat"));
    CHECK_THROWS_AS(pcf_typecheck({}, P("Y (\\x:nat. T)")), typed::TypeError);
    CHECK_THROWS_AS(pcf_typecheck({}, P("if zero then T else F")), typed::TypeError);
    CHECK_THROWS_AS(pcf_typecheck({}, P("\\x:o. x")), typed::TypeError);
    CHECK_THROWS_AS(pcf_typecheck(Ctx("x:o"), P("zero")), typed::TypeError);
    CHECK_THROWS_AS(pcf_typecheck({}, PP("POR T F")), typed::TypeError);
    CHECK(pcf_typecheck({}, PP("POR T F"), Dialect::ParallelPcf) == Type::boolean());
    CHECK(pcf_typecheck({}, por_test_term()) == Ty("(bool -> bool -> bool) -> bool"));
}

TEST_CASE("values") {
    for (const char* v : {"T", "F", "zero", "succ (succ zero)", "*", "<Y (\\x:nat. x), zero>", "\\x:nat. pred x"}) {
        CAPTURE(v);
        CHECK(is_value(P(v)));
        CHECK(small_step(P(v)).status == StepStatus::IsValue);
    }
    for (const char* v : {"succ (pred zero)", "pred zero", "(\\x:nat. x) zero", "Y (\\x:nat. x)", "pi1 <T, F>"}) {
        CAPTURE(v);
        CHECK_FALSE(is_value(P(v)));
    }
    CHECK(is_result(P("3")));
    CHECK_FALSE(is_result(P("*")));
}

TEST_CASE("small-step examples") {
    StepResult r = small_step(P("pred (succ zero)"));
    REQUIRE(r.status == StepStatus::Stepped);
    CHECK(same(*r.term, P("zero")));
    CHECK(r.rule == "pred-succ");

    r = small_step(P("if T then succ zero else zero"));
    CHECK(same(*r.term, P("succ zero")));
    CHECK(r.rule == "if-true");

    CHECK(small_step(P("pi1 (\\x:1. x)")).status == StepStatus::Stuck);
    CHECK(small_step(P("<zero, T> zero")).status == StepStatus::Stuck);

    r = small_step(P("succ (pred (succ zero))"));
    CHECK(same(*r.term, P("succ zero")));
    CHECK(r.position == Path{0});

    r = small_step(P("Y (\\x:nat. succ x)"));
    CHECK(same(*r.term, P("(\\x:nat. succ x) (Y (\\x:nat. succ x))")));
    CHECK(r.rule == "fix");

    // Arguments and branches are not evaluated.
    r = small_step(P("(\\x:nat. zero) (pred zero)"));
    CHECK(r.rule == "beta");
    CHECK(same(*r.term, P("zero")));
    r = small_step(P("if iszero zero then pred zero else zero"));
    CHECK(r.rule == "iszero-zero");
}

TEST_CASE("the unit rule applies only when nothing else does") {
    Context ctx = Ctx("p:1 * nat, u:1");
    StepResult r = small_step(P("pi1 p"), Dialect::Pcf, ctx);
    REQUIRE(r.status == StepStatus::Stepped);
    CHECK(r.rule == "unit");
    CHECK(r.term->is(Kind::Star));
    CHECK(small_step(P("u"), Dialect::Pcf, ctx).rule == "unit");
    CHECK(small_step(P("pi2 p"), Dialect::Pcf, ctx).status == StepStatus::Stuck);

    r = small_step(P("(\\x:nat. *) zero"));
    CHECK(r.rule == "beta");

    // A divergent term of type 1 diverges in both semantics.
    TypedTerm w = omega(Type::unit());
    CHECK(eval_small(w, 100).outcome == Outcome::FuelExhausted);
    CHECK(eval_big(w, 100).outcome == Outcome::FuelExhausted);
    EvalOptions opts;
    opts.ctx = ctx;
    EvalResult b = eval_big(P("pi1 p"), 10, opts);
    CHECK(b.outcome == Outcome::Value);
    CHECK(b.term.is(Kind::Star));
}

TEST_CASE("eval_small examples") {
    EvalResult r = eval_small(P("pred (succ (succ zero))"), 10);
    CHECK(r.outcome == Outcome::Value);
    CHECK(same(r.term, P("succ zero")));
    CHECK(r.steps == 1);

    r = eval_small(P("Y (\\x:nat. x)"), 100);
    CHECK(r.outcome == Outcome::FuelExhausted);
    CHECK(r.steps == 100);

    r = eval_small(P("<Y (\\x:nat. x), zero>"), 100);
    CHECK(r.outcome == Outcome::Value);
    CHECK(r.steps == 0);

    r = eval_small(P("pi1 (\\x:1. x)"), 100);
    CHECK(r.outcome == Outcome::Stuck);

    EvalOptions opts;
    opts.trace = true;
    r = eval_small(P("iszero (pred (succ zero))"), 10, opts);
    CHECK(r.term.is(Kind::True));
    REQUIRE(r.trace.size() == 2);
    CHECK(r.trace[0].rule == "pred-succ");
    CHECK(r.trace[1].rule == "iszero-zero");

    // Exactly enough fuel still reports the value.
    r = eval_small(P("pred (succ (succ zero))"), 1);
    CHECK(r.outcome == Outcome::Value);
}

TEST_CASE("eval_big examples") {
    EvalResult r = eval_big(P("iszero (pred (succ zero))"), 100);
    CHECK(r.outcome == Outcome::Value);
    CHECK(r.term.is(Kind::True));

    TypedTerm lam = P("\\x:nat. pred x");
    r = eval_big(lam, 1);
    CHECK(r.outcome == Outcome::Value);
    CHECK(same(r.term, lam));

    CHECK(eval_big(P("Y (\\x:nat. x)"), 100).outcome == Outcome::FuelExhausted);
    CHECK(eval_big(P("pi1 (\\x:1. x)"), 100).outcome == Outcome::NoRule);
    CHECK(eval_big(P("<zero, T> zero"), 100).outcome == Outcome::NoRule);

    r = eval_big(P("pi2 <Y (\\x:nat. x), succ 2>"), 100);
    CHECK(same(r.term, P("3")));

    TypedTerm add = P("Y (\\f:nat -> nat -> nat. \\m:nat. \\n:nat. if iszero m then n else succ (f (pred m) n))");
    r = eval_big(typed::apply(add, {P("2"), P("3")}), 1000);
    CHECK(same(r.term, P("5")));
    CHECK(same(eval_small(typed::apply(add, {P("2"), P("3")}), 1000).term, P("5")));
}

TEST_CASE("ax_rewrite examples") {
    CHECK(same(ax_rewrite(P("pred zero"), 10).term, P("zero")));
    CHECK(same(ax_rewrite(P("if F then zero else succ zero"), 10).term, P("succ zero")));
    CHECK(same(ax_rewrite(P("iszero (succ 3)"), 10).term, P("F")));
    CHECK(same(ax_rewrite(P("pred (succ 3)"), 10).term, P("3")));

    // The numeral side condition: pred(succ(x)) is not rewritten for a variable x.
    CHECK(same(ax_rewrite(P("\\x:nat. pred (succ x)"), 10).term, P("\\x:nat. pred (succ x)")));
    // Rewriting reaches under binders and inside pairs.
    CHECK(same(ax_rewrite(P("\\x:nat. <pred zero, iszero zero>"), 10).term, P("\\x:nat. <zero, T>")));

    AxResult r = ax_rewrite(P("Y (\\x:nat. succ x)"), 1000);
    CHECK_FALSE(r.exhausted);
    CHECK(r.y_unfolds == 32);
    CHECK(r.y_bound_hit);

    AxOptions opts;
    opts.y_bound = 3;
    r = ax_rewrite(P("Y (\\x:nat. succ x)"), 1000, opts);
    CHECK(same(r.term, P("succ (succ (succ (Y (\\x:nat. succ x))))")));

    r = ax_rewrite(P("Y (\\x:nat. x)"), 5);
    CHECK(r.exhausted);
}

TEST_CASE("each small-step rule is an instance of the axioms") {
    struct Instance {
        const char* rule;
        const char* lhs;
        const char* rhs;
    };
    const Instance cases[] = {
        {"pred-zero", "pred zero", "zero"},
        {"pred-succ", "pred (succ 2)", "2"},
        {"iszero-zero", "iszero zero", "T"},
        {"iszero-succ", "iszero (succ 4)", "F"},
        {"beta", "(\\x:nat. succ x) (pred zero)", "succ (pred zero)"},
        {"pi1", "pi1 <pred zero, T>", "pred zero"},
        {"pi2", "pi2 <pred zero, T>", "T"},
        {"if-true", "if T then zero else 1", "zero"},
        {"if-false", "if F then zero else 1", "1"},
        {"fix", "Y (\\f:nat -> nat. \\n:nat. f n)", "(\\f:nat -> nat. \\n:nat. f n) (Y (\\f:nat -> nat. \\n:nat. f n))"},
        {"pred-cong", "pred (if T then 1 else 2)", "pred 1"},
        {"iszero-cong", "iszero ((\\x:nat. x) 3)", "iszero 3"},
        {"succ-cong", "succ (pred 2)", "succ 1"},
        {"app-cong", "(if F then \\x:nat. x else \\x:nat. zero) 3", "(\\x:nat. zero) 3"},
        {"pi-cong", "pi2 ((\\x:nat. <x, x>) 5)", "pi2 <5, 5>"},
        {"if-cong", "if iszero 1 then 2 else 3", "if F then 2 else 3"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.rule);
        TypedTerm m = P(c.lhs);
        TypedTerm n = P(c.rhs);
        StepResult r = small_step(m);
        REQUIRE(r.status == StepStatus::Stepped);
        CHECK(same(*r.term, n));
        CHECK(ax_joinable(m, n, 8));
    }
    // The unit rule is the eta axiom at type 1.
    Context ctx = Ctx("p:1 * nat");
    TypedTerm m = P("pi1 p");
    bool eta_unit = false;
    for (const auto& red : stlc::step_typed(ctx, m, {false, true})) {
        if (red.rule == "eta-unit" && red.term.is(Kind::Star)) eta_unit = true;
    }
    CHECK(eta_unit);
    CHECK(small_step(m, Dialect::Pcf, ctx).term->is(Kind::Star));
}

TEST_CASE("PCF safety, determinism and big/small agreement on a fuzz corpus") {
    lcw::testing::PcfGen gen(1107);
    const std::size_t fuel = 400;
    Tally tally;
    int agreed = 0;
    for (int i = 0; i < 2000; ++i) {
        Type a = gen.random_type(i % 3 == 0 ? 1 : 0);
        TypedTerm m = gen.program(a, 4 + static_cast<int>(gen.pick(14)));
        CAPTURE(syntax::print(m));
        REQUIRE(pcf_typecheck({}, m) == a);

        TypedTerm cur = m;
        std::size_t steps = 0;
        bool done = false;
        while (steps < fuel) {
            std::vector<TypedTerm> oracle = successors(cur, false);
            StepResult r = small_step(cur);
            StepResult again = small_step(cur);
            REQUIRE(oracle.size() <= 1);
            if (r.status == StepStatus::IsValue) {
                CHECK(is_value(cur));
                CHECK(oracle.empty());
                done = true;
                break;
            }
            REQUIRE(r.status == StepStatus::Stepped);
            REQUIRE(oracle.size() == 1);
            CHECK(same(*r.term, oracle[0]));
            CHECK(same(*r.term, *again.term));
            CHECK(pcf_typecheck({}, *r.term) == a);
            auto ax = ax_step(cur);
            REQUIRE(ax);
            CHECK(same(*ax, *r.term));
            ++tally.rules[r.rule];
            cur = *r.term;
            ++steps;
        }
        if (!done && is_value(cur)) done = true;
        EvalResult small = eval_small(m, fuel);
        CHECK(small.outcome != Outcome::Stuck);
        CHECK((small.outcome == Outcome::Value) == done);
        if (done) {
            ++tally.converged;
            CHECK(same(small.term, cur));
        } else {
            ++tally.exhausted;
        }

        EvalResult big = eval_big(m, 4 * fuel);
        CHECK(big.outcome != Outcome::NoRule);
        if (big.ok() != small.ok()) {
            if (!small.ok()) small = eval_small(m, 20 * fuel);
            if (!big.ok()) big = eval_big(m, 20 * 4 * fuel);
        }
        if (small.ok() && big.ok()) {
            CHECK(same(small.term, big.term));
            ++agreed;
        } else {
            CHECK(small.ok() == big.ok());
        }
    }
    MESSAGE("converged " << tally.converged << ", exhausted " << tally.exhausted << ", agreed " << agreed);
    CHECK(tally.converged > 1000);
    CHECK(tally.exhausted > 20);
    for (const char* rule : {"pred-zero", "pred-succ", "iszero-zero", "iszero-succ", "beta", "pi1", "pi2",
                             "if-true", "if-false", "fix"}) {
        CAPTURE(rule);
        CHECK(tally.rules[rule] > 0);
    }
}

TEST_CASE("printing and parsing PCF corpus terms round-trips") {
    lcw::testing::PcfGen gen(77);
    for (int i = 0; i < 300; ++i) {
        TypedTerm m = gen.program(gen.random_type(1), 12);
        std::string text = syntax::print(m);
        CAPTURE(text);
        CHECK(same(P(text), m));
        CHECK(same(P(syntax::print(m, syntax::PrintStyle::Unicode)), m));
    }
}

TEST_CASE("parallel or") {
    CHECK(por_eval(PP("POR T (Y (\\x:bool. x))"), 100).term.is(Kind::True));
    CHECK(por_eval(PP("POR (Y (\\x:bool. x)) T"), 100).term.is(Kind::True));
    CHECK(por_eval(PP("POR F F"), 100).term.is(Kind::False));
    CHECK(por_eval(PP("POR (Y (\\x:bool. x)) F"), 100).outcome == Outcome::FuelExhausted);

    // Both arguments step together, or the one that can.
    StepResult r = small_step(PP("POR (iszero zero) (iszero 1)"), Dialect::ParallelPcf);
    CHECK(same(*r.term, PP("POR T F")));
    r = small_step(PP("POR F (iszero zero)"), Dialect::ParallelPcf);
    CHECK(same(*r.term, PP("POR F T")));
    CHECK(r.position == Path{1});
    CHECK(same(*small_step(PP("POR (iszero 2) (Y (\\x:bool. x))"), Dialect::ParallelPcf).term,
               PP("POR F ((\\x:bool. x) (Y (\\x:bool. x)))")));

    // Outside the parallel dialect the constructor is inert.
    CHECK(small_step(PP("POR T F")).status == StepStatus::Stuck);

    TypedTerm tester = por_test_term();
    EvalResult e = por_eval(TypedTerm::app(tester, por_function()), 1000);
    CHECK(e.outcome == Outcome::Value);
    CHECK(e.term.is(Kind::True));
    EvalOptions par;
    par.dialect = Dialect::ParallelPcf;
    CHECK(eval_big(TypedTerm::app(tester, por_function()), 1000, par).term.is(Kind::True));

    for (const char* candidate : {"\\a:bool. \\b:bool. a", "\\a:bool. \\b:bool. b",
                                  "\\a:bool. \\b:bool. if a then T else b"}) {
        CAPTURE(candidate);
        TypedTerm applied = TypedTerm::app(tester, P(candidate));
        CHECK(pcf_typecheck({}, applied) == Type::boolean());
        CHECK(eval_small(applied, 10000).outcome == Outcome::FuelExhausted);
        CHECK(eval_big(applied, 10000).outcome == Outcome::FuelExhausted);
    }
}
