#include "lcw/names.hpp"
#include "lcw/systemf.hpp"
#include "lcw/typed_term.hpp"

namespace lcw::systemf {

using TK = FType::Kind;
using MK = FTerm::Kind;

namespace {

FType tv(const char* a) { return FType::var(a); }
FTerm v(const char* x) { return FTerm::var(x); }
FType arr(FType a, FType b) { return FType::arrow(std::move(a), std::move(b)); }

std::string fresh_tvar(const std::set<std::string>& avoid) {
    return avoid.count("a") ? fresh_name("a", avoid) : "a";
}

LongNormalCheck check_long(FContext& ctx, const FTerm& n, Path& path) {
    if (n.is(MK::Abs)) {
        ctx.emplace_back(n.name(), n.type());
        path.push_back(0);
        auto r = check_long(ctx, n.child(0), path);
        path.pop_back();
        ctx.pop_back();
        return r;
    }
    if (n.is(MK::TyAbs)) {
        path.push_back(0);
        auto r = check_long(ctx, n.child(0), path);
        path.pop_back();
        return r;
    }
    std::vector<std::pair<const FTerm*, Path>> args;
    const FTerm* cur = &n;
    Path p = path;
    while (cur->is(MK::App) || cur->is(MK::TyApp)) {
        if (cur->is(MK::App)) {
            Path ap = p;
            ap.push_back(1);
            args.emplace_back(&cur->child(1), ap);
        }
        cur = &cur->child(0);
        p.push_back(0);
    }
    if (!cur->is(MK::Var)) {
        return {false, p, "head is not a variable"};
    }
    if (!ftypecheck(ctx, n).is(TK::Var)) {
        return {false, path, "body is not of atomic type"};
    }
    for (auto it = args.rbegin(); it != args.rend(); ++it) {
        Path ap = it->second;
        auto r = check_long(ctx, *it->first, ap);
        if (!r.ok) return r;
    }
    return {true, {}, ""};
}

bool closed_at(const FTerm& m, const FType& a) {
    if (!free_vars(m).empty()) return false;
    try {
        return ftypecheck({}, m) == a;
    } catch (const typed::TypeError&) {
        return false;
    }
}

std::optional<std::size_t> read_numeral(const FTerm& l) {
    if (!l.is(MK::TyAbs) || !l.child(0).is(MK::Abs) || !l.child(0).child(0).is(MK::Abs)) {
        return std::nullopt;
    }
    const std::string& f = l.child(0).name();
    const std::string& x = l.child(0).child(0).name();
    if (f == x) return std::nullopt;
    const FTerm* body = &l.child(0).child(0).child(0);
    std::size_t n = 0;
    while (body->is(MK::App) && body->child(0).is(MK::Var) && body->child(0).name() == f) {
        ++n;
        body = &body->child(1);
    }
    if (body->is(MK::Var) && body->name() == x) return n;
    return std::nullopt;
}

std::optional<LTree> read_tree(const FTerm& body, const std::string& l, const std::string& b) {
    if (body.is(MK::App) && body.child(0).is(MK::Var) && body.child(0).name() == l) {
        auto n = read_numeral(body.child(1));
        if (n) return LTree::leaf(*n);
        return std::nullopt;
    }
    if (body.is(MK::App) && body.child(0).is(MK::App) && body.child(0).child(0).is(MK::Var) &&
        body.child(0).child(0).name() == b) {
        auto left = read_tree(body.child(0).child(1), l, b);
        auto right = read_tree(body.child(1), l, b);
        if (left && right) return LTree::branch(*left, *right);
    }
    return std::nullopt;
}

FTerm tree_body(const LTree& t) {
    if (t.is_leaf()) return FTerm::app(v("l"), hygienic(f_numeral(t.label), {{"l", arr(nat_type(), tv("a"))}}));
    return apply(v("b"), {tree_body(t.kids[0]), tree_body(t.kids[1])});
}

}  // namespace

LongNormalCheck is_long_normal(const FTerm& m, const FContext& ctx) {
    try {
        ftypecheck(ctx, m);
    } catch (const typed::TypeError& e) {
        return {false, e.path(), std::string("ill-typed: ") + e.what()};
    }
    FContext work = ctx;
    Path path;
    return check_long(work, m, path);
}

FType bool_type() { return FType::forall("a", arr(tv("a"), arr(tv("a"), tv("a")))); }
FType nat_type() { return FType::forall("a", arr(arr(tv("a"), tv("a")), arr(tv("a"), tv("a")))); }
FType tree_type() {
    return FType::forall("a", arr(arr(nat_type(), tv("a")), arr(arr(tv("a"), arr(tv("a"), tv("a"))), tv("a"))));
}
FType unit_type() { return FType::forall("a", arr(tv("a"), tv("a"))); }
FType void_type() { return FType::forall("a", tv("a")); }

FType product_type(const FType& a, const FType& b) {
    auto avoid = ftv(a);
    for (const auto& x : ftv(b)) avoid.insert(x);
    std::string c = fresh_tvar(avoid);
    FType cv = FType::var(c);
    return FType::forall(c, arr(arr(a, arr(b, cv)), cv));
}

FType sum_type(const FType& a, const FType& b) {
    auto avoid = ftv(a);
    for (const auto& x : ftv(b)) avoid.insert(x);
    std::string c = fresh_tvar(avoid);
    FType cv = FType::var(c);
    return FType::forall(c, arr(arr(a, cv), arr(arr(b, cv), cv)));
}

FTerm f_numeral(std::size_t n) {
    FTerm body = v("x");
    for (std::size_t i = 0; i < n; ++i) body = FTerm::app(v("f"), body);
    return FTerm::tyabs("a", FTerm::abs("f", arr(tv("a"), tv("a")), FTerm::abs("x", tv("a"), body)));
}

FTerm f_pair(const FType& a, const FType& b, const FTerm& m, const FTerm& n) {
    auto avoid = ftv(a);
    for (const auto& x : ftv(b)) avoid.insert(x);
    for (const auto& x : ftv(m)) avoid.insert(x);
    for (const auto& x : ftv(n)) avoid.insert(x);
    std::string c = fresh_tvar(avoid);
    auto names = free_vars(m);
    for (const auto& x : free_vars(n)) names.insert(x);
    std::string f = names.count("f") ? fresh_name("f", names) : "f";
    FContext scope{{f, arr(a, arr(b, FType::var(c)))}};
    return FTerm::tyabs(c, FTerm::abs(f, scope[0].second, apply(FTerm::var(f), {hygienic(m, scope), hygienic(n, scope)})));
}

const std::map<std::string, FEncoding>& f_encodings() {
    static const std::map<std::string, FEncoding> table = [] {
        std::map<std::string, FEncoding> t;
        FType a = tv("a"), b = tv("b"), c = tv("c");
        FType boolean = bool_type(), nat = nat_type(), tree = tree_type();

        FTerm tt = FTerm::tyabs("a", FTerm::abs("x", a, FTerm::abs("y", a, v("x"))));
        FTerm ff = FTerm::tyabs("a", FTerm::abs("x", a, FTerm::abs("y", a, v("y"))));
        FTerm ite = FTerm::tyabs("b", FTerm::abs("z", boolean, FTerm::tyapp(v("z"), b)));
        FTerm ite_bool = FTerm::tyapp(ite, boolean);
        t.emplace("T", FEncoding{tt, boolean});
        t.emplace("F", FEncoding{ff, boolean});
        t.emplace("if_then_else", FEncoding{ite, FType::forall("b", arr(boolean, arr(b, arr(b, b))))});
        t.emplace("and", FEncoding{FTerm::abs("a", boolean, FTerm::abs("b", boolean, apply(ite_bool, {v("a"), v("b"), ff}))),
                                   arr(boolean, arr(boolean, boolean))});
        t.emplace("or", FEncoding{FTerm::abs("a", boolean, FTerm::abs("b", boolean, apply(ite_bool, {v("a"), tt, v("b")}))),
                                  arr(boolean, arr(boolean, boolean))});
        t.emplace("not", FEncoding{FTerm::abs("a", boolean, apply(ite_bool, {v("a"), ff, tt})), arr(boolean, boolean)});

        FType aa = arr(a, a);
        auto nafx = [&](const char* n, FTerm f, FTerm x) { return apply(FTerm::tyapp(v(n), a), {std::move(f), std::move(x)}); };
        t.emplace("succ", FEncoding{FTerm::abs("n", nat, FTerm::tyabs("a", FTerm::abs("f", aa, FTerm::abs("x", a,
                                        FTerm::app(v("f"), nafx("n", v("f"), v("x"))))))),
                                    arr(nat, nat)});
        t.emplace("add", FEncoding{FTerm::abs("n", nat, FTerm::abs("m", nat, FTerm::tyabs("a", FTerm::abs("f", aa, FTerm::abs("x", a,
                                       nafx("n", v("f"), nafx("m", v("f"), v("x")))))))),
                                   arr(nat, arr(nat, nat))});
        t.emplace("mult", FEncoding{FTerm::abs("n", nat, FTerm::abs("m", nat, FTerm::tyabs("a", FTerm::abs("f", aa,
                                        FTerm::app(FTerm::tyapp(v("n"), a), FTerm::app(FTerm::tyapp(v("m"), a), v("f"))))))),
                                    arr(nat, arr(nat, nat))});
        for (std::size_t n = 0; n <= 4; ++n) {
            t.emplace("n" + std::to_string(n), FEncoding{f_numeral(n), nat});
        }

        FType ab = product_type(a, b);
        t.emplace("pair", FEncoding{FTerm::tyabs("a", FTerm::tyabs("b", FTerm::abs("x", a, FTerm::abs("y", b,
                                        FTerm::tyabs("c", FTerm::abs("f", arr(a, arr(b, c)), apply(v("f"), {v("x"), v("y")}))))))),
                                    FType::forall("a", FType::forall("b", arr(a, arr(b, ab))))});
        t.emplace("proj1", FEncoding{FTerm::tyabs("a", FTerm::tyabs("b", FTerm::abs("p", ab,
                                         FTerm::app(FTerm::tyapp(v("p"), a), FTerm::abs("x", a, FTerm::abs("y", b, v("x"))))))),
                                     FType::forall("a", FType::forall("b", arr(ab, a)))});
        t.emplace("proj2", FEncoding{FTerm::tyabs("a", FTerm::tyabs("b", FTerm::abs("p", ab,
                                         FTerm::app(FTerm::tyapp(v("p"), b), FTerm::abs("x", a, FTerm::abs("y", b, v("y"))))))),
                                     FType::forall("a", FType::forall("b", arr(ab, b)))});

        t.emplace("star", FEncoding{FTerm::tyabs("a", FTerm::abs("x", a, v("x"))), unit_type()});
        FType apb = sum_type(a, b);
        t.emplace("inj1", FEncoding{FTerm::tyabs("a", FTerm::tyabs("b", FTerm::abs("x", a, FTerm::tyabs("c",
                                        FTerm::abs("f", arr(a, c), FTerm::abs("g", arr(b, c), FTerm::app(v("f"), v("x")))))))),
                                    FType::forall("a", FType::forall("b", arr(a, apb)))});
        t.emplace("inj2", FEncoding{FTerm::tyabs("a", FTerm::tyabs("b", FTerm::abs("y", b, FTerm::tyabs("c",
                                        FTerm::abs("f", arr(a, c), FTerm::abs("g", arr(b, c), FTerm::app(v("g"), v("y")))))))),
                                    FType::forall("a", FType::forall("b", arr(b, apb)))});
        t.emplace("case", FEncoding{FTerm::tyabs("a", FTerm::tyabs("b", FTerm::tyabs("c", FTerm::abs("s", apb,
                                        FTerm::abs("f", arr(a, c), FTerm::abs("g", arr(b, c),
                                            apply(FTerm::tyapp(v("s"), c), {v("f"), v("g")}))))))),
                                    FType::forall("a", FType::forall("b", FType::forall("c",
                                        arr(apb, arr(arr(a, c), arr(arr(b, c), c))))))});
        t.emplace("abort", FEncoding{FTerm::tyabs("a", FTerm::abs("v", void_type(), FTerm::tyapp(v("v"), a))),
                                     FType::forall("a", arr(void_type(), a))});

        FType la = arr(nat, a), baa = arr(a, arr(a, a));
        t.emplace("leaf", FEncoding{FTerm::abs("n", nat, FTerm::tyabs("a", FTerm::abs("l", la, FTerm::abs("b", baa,
                                        FTerm::app(v("l"), v("n")))))),
                                    arr(nat, tree)});
        auto sub = [&](const char* s) { return apply(FTerm::tyapp(v(s), a), {v("l"), v("b")}); };
        t.emplace("branch", FEncoding{FTerm::abs("s", tree, FTerm::abs("t", tree, FTerm::tyabs("a", FTerm::abs("l", la,
                                          FTerm::abs("b", baa, apply(v("b"), {sub("s"), sub("t")})))))),
                                      arr(tree, arr(tree, tree))});
        return t;
    }();
    return table;
}

std::optional<bool> classify_bool(const FTerm& m) {
    if (!closed_at(m, bool_type())) return std::nullopt;
    FTerm l = long_normal_form(m, {});
    if (alpha_eq(l, f_encodings().at("T").term)) return true;
    if (alpha_eq(l, f_encodings().at("F").term)) return false;
    return std::nullopt;
}

std::optional<std::size_t> classify_nat(const FTerm& m) {
    if (!closed_at(m, nat_type())) return std::nullopt;
    return read_numeral(long_normal_form(m, {}));
}

std::string to_string(const LTree& t) {
    if (t.is_leaf()) return "leaf(" + std::to_string(t.label) + ")";
    return "branch(" + to_string(t.kids[0]) + ", " + to_string(t.kids[1]) + ")";
}

FTerm encode_tree(const LTree& t) {
    FType a = tv("a");
    return FTerm::tyabs("a", FTerm::abs("l", arr(nat_type(), a), FTerm::abs("b", arr(a, arr(a, a)), tree_body(t))));
}

std::optional<LTree> decode_tree(const FTerm& m) {
    if (!closed_at(m, tree_type())) return std::nullopt;
    FTerm l = long_normal_form(m, {});
    if (!l.is(MK::TyAbs) || !l.child(0).is(MK::Abs) || !l.child(0).child(0).is(MK::Abs)) return std::nullopt;
    const std::string& leaf = l.child(0).name();
    const std::string& branch = l.child(0).child(0).name();
    if (leaf == branch) return std::nullopt;
    return read_tree(l.child(0).child(0).child(0), leaf, branch);
}

}  // namespace lcw::systemf
