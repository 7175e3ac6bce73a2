#include <functional>
#include <random>

#include "doctest.h"
#include "lcw/models.hpp"
#include "lcw/names.hpp"
#include "lcw/stlc.hpp"
#include "typed_corpus.hpp"
#include "oracles.hpp"

using namespace lcw;
using namespace lcw::models;
using lcw::testing::Ctx;
using lcw::testing::T;
using lcw::testing::Ty;
using lcw::testing::iterates_agree;

namespace {

const Type iota = Type::base("i");
const Type church = Type::arrow(Type::arrow(iota, iota), Type::arrow(iota, iota));

}  // namespace

TEST_CASE("type interpretations") {
    CHECK(interp_type(iota, BaseAssignment::all(2)).size() == 2);
    CHECK(interp_type(Type::arrow(iota, iota), BaseAssignment::all(2)).size() == 4);
    CHECK(interp_type(church, BaseAssignment::all(2)).size() == 256);
    CHECK(interp_type(Type::unit(), BaseAssignment::all(5)).size() == 1);
    CHECK(interp_type(Type::product(iota, Type::arrow(iota, Type::unit())), BaseAssignment::all(3)).size() == 3);
    CHECK_THROWS_AS(interp_type(church, BaseAssignment::all(3)), ModelOverflow);
    CHECK_THROWS_AS(interp_type(iota, BaseAssignment{}), UsageError);
    CHECK_THROWS_AS(interp_type(Ty("i + i"), BaseAssignment::all(2)), UsageError);
    BaseAssignment mixed{{{"j", 3}}, 2};
    CHECK(interp_type(Ty("i -> j"), mixed).size() == 9);
    CHECK(interp_type(Ty("j -> i"), mixed).size() == 8);

    for (const char* text : {"i -> i", "i * (i -> i)", "(i -> i) -> i", "1 -> i * 1"}) {
        Domain d(Ty(text), BaseAssignment::all(2));
        auto all = interp_type(Ty(text), BaseAssignment::all(2));
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(d.index(all[i]) == i);
            for (std::size_t j = 0; j < i; ++j) CHECK(all[i] != all[j]);
        }
    }
}

TEST_CASE("term interpretations") {
    auto id = interp_term({}, T("\\x:i. x"), Ty("i -> i"), BaseAssignment::all(2));
    REQUIRE(id.entries.size() == 1);
    CHECK(to_string(id.entries[0]) == "[0 1]");

    auto fx = interp_term(Ctx("x:i, f:i->i"), T("f x"), iota, BaseAssignment::all(3));
    CHECK(fx.entries.size() == 3 * 27);
    Domain fun(Ty("i -> i"), BaseAssignment::all(3));
    for (std::size_t i = 0; i < fx.entries.size(); ++i) {
        auto env = fx.env_at(i);
        CHECK(fx.env_index(env) == i);
        CHECK(fx.entries[i].atom == fun.value(env[1]).parts[env[0]].atom);
    }

    auto star = interp_term(Ctx("x:i"), T("*"), Type::unit(), BaseAssignment::all(3));
    for (const auto& e : star.entries) CHECK(e.kind == SemValue::Kind::UnitPoint);

    auto swap = interp_term(Ctx("p:i*i"), T("<pi2 p, pi1 p>"), Ty("i * i"), BaseAssignment::all(2));
    Domain pairs(Ty("i * i"), BaseAssignment::all(2));
    for (std::size_t i = 0; i < 4; ++i) {
        auto v = pairs.value(i);
        CHECK(swap.entries[i].parts[0] == v.parts[1]);
        CHECK(swap.entries[i].parts[1] == v.parts[0]);
    }
    auto shadow = interp_term(Ctx("x:i, x:i->i"), T("x"), Ty("i -> i"), BaseAssignment::all(2));
    Domain fun2(Ty("i -> i"), BaseAssignment::all(2));
    CHECK(shadow.env_at(5) == std::vector<std::size_t>{1, 1});
    CHECK(shadow.entries[5] == fun2.value(1));

    CHECK_THROWS_AS(interp_term({}, T("\\x:i. x"), iota, BaseAssignment::all(2)), typed::TypeError);
    CHECK_THROWS_AS(interp_term(Ctx("s:i+i"), T("s"), Ty("i + i"), BaseAssignment::all(2)), UsageError);
    CHECK_THROWS_AS(interp_term({}, T("\\f:(i->i)->i. f"), Ty("((i->i)->i)->(i->i)->i"),
                                BaseAssignment::all(3), 1000),
                    ModelOverflow);
}

TEST_CASE("soundness and separation examples") {
    auto beta = check_soundness(T("(\\x:i. x) y"), T("y"), Ctx("y:i"), iota, BaseAssignment::all(3), 100);
    CHECK(beta.tables_equal);
    CHECK(beta.convertible == std::optional<bool>(true));
    auto eta = check_soundness(T("\\y:i. x y"), T("x"), Ctx("x:i->i"), Ty("i -> i"), BaseAssignment::all(2), 100);
    CHECK(eta.tables_equal);
    CHECK(eta.convertible == std::optional<bool>(true));
    auto nums = check_soundness(typed_numeral(1, iota), typed_numeral(2, iota), {}, church,
                                BaseAssignment::all(2), 100);
    CHECK_FALSE(nums.tables_equal);
    CHECK(nums.convertible == std::optional<bool>(false));

    CHECK(iterates_agree(2, 4, 2));
    CHECK_FALSE(iterates_agree(2, 4, 3));
    CHECK_FALSE(iterates_agree(1, 2, 2));

    auto s12 = separate(typed_numeral(1, iota), typed_numeral(2, iota), {}, church, 3);
    REQUIRE(s12);
    CHECK(s12->uniform == 2);
    CHECK_FALSE(separate(typed_numeral(2, iota), typed_numeral(4, iota), {}, church, 2));
    auto s24 = separate(typed_numeral(2, iota), typed_numeral(4, iota), {}, church, 3);
    REQUIRE(s24);
    CHECK(s24->uniform == 3);
    CHECK_FALSE(separate(typed_numeral(3, iota), typed_numeral(3, iota), {}, church, 4));

    // Finite-model collapse: at k = 2 agreement of numerals matches the oracle.
    for (std::size_t m = 0; m <= 4; ++m) {
        for (std::size_t n = 0; n <= 4; ++n) {
            auto a = interp_term({}, typed_numeral(m, iota), church, BaseAssignment::all(2));
            auto b = interp_term({}, typed_numeral(n, iota), church, BaseAssignment::all(2));
            CHECK((a == b) == iterates_agree(m, n, 2));
        }
    }
}

TEST_CASE("one-step reductions preserve tables") {
    lcw::testing::TypedGen gen(31, false);
    std::size_t pairs = 0, skipped = 0;
    for (int i = 0; i < 250; ++i) {
        Context ctx = gen.base_context();
        Type a = gen.random_type(2);
        TypedTerm m = gen.term(ctx, a, 3 + i % 12);
        for (const auto& r : stlc::step_typed(ctx, m, {true, false})) {
            for (std::size_t k = 1; k <= 3; ++k) {
                try {
                    auto lhs = interp_term(ctx, m, a, BaseAssignment::all(k));
                    auto rhs = interp_term(ctx, r.term, a, BaseAssignment::all(k));
                    CHECK(lhs == rhs);
                    ++pairs;
                } catch (const ModelOverflow&) {
                    ++skipped;
                }
            }
        }
    }
    CHECK(pairs > 300);
    CHECK(skipped < pairs);
}

TEST_CASE("context change and substitution") {
    lcw::testing::TypedGen gen(37, false);
    const auto base = BaseAssignment::all(2);
    for (int i = 0; i < 150; ++i) {
        Context ctx = gen.base_context();
        Type a = gen.random_type(1);
        TypedTerm m = gen.term(ctx, a, 2 + i % 10);

        // Reversed and extended context: f(a_1..a_m) = g(a_sigma(1)..a_sigma(n)).
        Context wider{{"e", Ty("i")}, ctx[1], ctx[0]};
        BaseAssignment two{{{"i", 3}}, 2};
        auto g = interp_term(ctx, m, a, two);
        auto f = interp_term(wider, m, a, two);
        for (std::size_t e = 0; e < f.entries.size(); ++e) {
            auto env = f.env_at(e);
            CHECK(f.entries[e] == g.at({env[2], env[1]}));
        }

        // h(a) = f(a, g(a)) for M[N/x].
        Type b = gen.random_type(1);
        Context inner = ctx;
        inner.emplace_back("x", b);
        TypedTerm body = gen.term(inner, a, 2 + i % 8);
        TypedTerm arg = gen.term(ctx, b, 2 + i % 5);
        try {
            auto fm = interp_term(inner, body, a, base);
            auto gn = interp_term(ctx, arg, b, base);
            auto h = interp_term(ctx, typed::subst(body, arg, "x"), a, base);
            Domain bd(b, base);
            for (std::size_t e = 0; e < h.entries.size(); ++e) {
                auto env = h.env_at(e);
                std::vector<std::size_t> ext = env;
                ext.push_back(bd.index(gn.entries[e]));
                CHECK(h.entries[e] == fm.at(ext));
            }
        } catch (const ModelOverflow&) {
        }
    }
}
