#include "lcw/typed_term.hpp"

namespace lcw::typed {

namespace {

bool allows(Dialect d, Kind k) {
    switch (k) {
        case Kind::In1:
        case Kind::In2:
        case Kind::Case:
        case Kind::Abort:
            return d == Dialect::Stlc;
        case Kind::True:
        case Kind::False:
        case Kind::Zero:
        case Kind::Succ:
        case Kind::Pred:
        case Kind::IsZero:
        case Kind::If:
        case Kind::Fix:
            return d != Dialect::Stlc;
        case Kind::Por:
            return d == Dialect::ParallelPcf;
        default:
            return true;
    }
}

const char* rule_name(Kind k) {
    switch (k) {
        case Kind::Var: return "var";
        case Kind::App: return "app";
        case Kind::Abs: return "abs";
        case Kind::Pair: return "pair";
        case Kind::Proj1: return "pi1";
        case Kind::Proj2: return "pi2";
        case Kind::Star: return "star";
        case Kind::In1: return "in1";
        case Kind::In2: return "in2";
        case Kind::Case: return "case";
        case Kind::Abort: return "abort";
        case Kind::True: return "true";
        case Kind::False: return "false";
        case Kind::Zero: return "zero";
        case Kind::Succ: return "succ";
        case Kind::Pred: return "pred";
        case Kind::IsZero: return "iszero";
        case Kind::If: return "if";
        case Kind::Fix: return "fix";
        case Kind::Por: return "por";
    }
    return "?";
}

std::string show(const Type& a) { return types::to_string(a); }

class Checker {
  public:
    explicit Checker(Dialect d) : dialect_(d) {}

    Type check(Context& ctx, const TypedTerm& m, Derivation* out) {
        const char* rule = rule_name(m.kind());
        if (!allows(dialect_, m.kind())) {
            fail(std::string("constructor '") + rule + "' is not part of this calculus", rule);
        }
        std::vector<Derivation> premises;
        auto sub = [&](std::size_t i) -> Type {
            path_.push_back(static_cast<int>(i));
            Derivation* d = nullptr;
            if (out) {
                premises.emplace_back(Derivation{"", {}, m.child(i), Type::unit(), {}});
                d = &premises.back();
            }
            Type t = check(ctx, m.child(i), d);
            path_.pop_back();
            return t;
        };
        auto bound = [&](std::size_t i, const std::string& x, const Type& a) -> Type {
            ctx.emplace_back(x, a);
            Type t = sub(i);
            ctx.pop_back();
            return t;
        };
        Type result = Type::unit();
        switch (m.kind()) {
            case Kind::Var: {
                auto t = lookup(ctx, m.name());
                if (!t) fail("unbound variable '" + m.name() + "'", rule);
                result = *t;
                break;
            }
            case Kind::Abs: {
                if (!m.annot()) fail("binder '" + m.name() + "' has no type annotation", rule);
                Type body = bound(0, m.name(), *m.annot());
                result = Type::arrow(*m.annot(), body);
                break;
            }
            case Kind::App: {
                Type f = sub(0);
                Type a = sub(1);
                if (!f.is_arrow()) fail("applying a term of non-function type " + show(f), rule);
                if (f.dom() != a)
                    fail("argument has type " + show(a) + " but " + show(f.dom()) + " was expected",
                         rule);
                result = f.cod();
                break;
            }
            case Kind::Pair: {
                Type l = sub(0);
                Type r = sub(1);
                result = Type::product(l, r);
                break;
            }
            case Kind::Proj1:
            case Kind::Proj2: {
                Type t = sub(0);
                if (!t.is_product()) fail("projection from non-product type " + show(t), rule);
                result = m.is(Kind::Proj1) ? t.left() : t.right();
                break;
            }
            case Kind::Star:
                result = Type::unit();
                break;
            case Kind::In1:
            case Kind::In2: {
                const Type& full = *m.annot();
                if (!full.is_sum()) fail("injection annotated with non-sum type " + show(full), rule);
                Type t = sub(0);
                const Type& want = m.is(Kind::In1) ? full.left() : full.right();
                if (t != want)
                    fail("injected term has type " + show(t) + " but " + show(want) + " was expected",
                         rule);
                result = full;
                break;
            }
            case Kind::Case: {
                Type s = sub(0);
                if (!s.is_sum()) fail("case on non-sum type " + show(s), rule);
                if (m.annot() && *m.annot() != s.left())
                    fail("left binder annotation does not match " + show(s.left()), rule);
                if (m.annot2() && *m.annot2() != s.right())
                    fail("right binder annotation does not match " + show(s.right()), rule);
                Type l = bound(1, m.name(), s.left());
                Type r = bound(2, m.name2(), s.right());
                if (l != r) fail("case branches have types " + show(l) + " and " + show(r), rule);
                result = l;
                break;
            }
            case Kind::Abort: {
                Type t = sub(0);
                if (!t.is(Type::Kind::Void)) fail("abort of non-empty type " + show(t), rule);
                result = *m.annot();
                break;
            }
            case Kind::True:
            case Kind::False:
                result = Type::boolean();
                break;
            case Kind::Zero:
                result = Type::nat();
                break;
            case Kind::Succ:
            case Kind::Pred:
            case Kind::IsZero: {
                Type t = sub(0);
                if (t != Type::nat()) fail(std::string(rule) + " expects nat, got " + show(t), rule);
                result = m.is(Kind::IsZero) ? Type::boolean() : Type::nat();
                break;
            }
            case Kind::If: {
                Type c = sub(0);
                if (c != Type::boolean()) fail("condition has type " + show(c), rule);
                Type n = sub(1);
                Type p = sub(2);
                if (n != p) fail("branches have types " + show(n) + " and " + show(p), rule);
                result = n;
                break;
            }
            case Kind::Fix: {
                Type t = sub(0);
                if (!t.is_arrow() || t.dom() != t.cod())
                    fail("fixed point of a term of type " + show(t) + ", expected A -> A", rule);
                result = t.dom();
                break;
            }
            case Kind::Por: {
                Type l = sub(0);
                Type r = sub(1);
                if (l != Type::boolean() || r != Type::boolean())
                    fail("POR expects two booleans", rule);
                result = Type::boolean();
                break;
            }
        }
        if (out) {
            out->rule = rule;
            out->ctx = ctx;
            out->term = m;
            out->type = result;
            out->premises = std::move(premises);
        }
        return result;
    }

  private:
    [[noreturn]] void fail(const std::string& msg, const char* rule) const {
        throw TypeError(msg, path_, rule);
    }

    Dialect dialect_;
    Path path_;
};

}  // namespace

Type typecheck(const Context& ctx, const TypedTerm& m, Dialect dialect) {
    Context c = ctx;
    return Checker(dialect).check(c, m, nullptr);
}

Derivation derive(const Context& ctx, const TypedTerm& m, Dialect dialect) {
    Context c = ctx;
    Derivation d{"", {}, m, Type::unit(), {}};
    Checker(dialect).check(c, m, &d);
    return d;
}

}  // namespace lcw::typed
