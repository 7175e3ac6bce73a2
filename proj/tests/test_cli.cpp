#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "lcw/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run lcw_run(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = lcw::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("reduce") {
    auto r = lcw_run({"reduce", "--mode", "beta", "(\\x.y)((\\z.z z)(\\w.w))"});
    CHECK(r.code == 0);
    CHECK(r.out == "y\n");

    r = lcw_run({"reduce", "--trace", "(\\x y. x) a b"});
    CHECK(r.out == "(\\x y. x) a b\n-> (\\y. a) b\n-> a\n");

    r = lcw_run({"reduce", "--mode", "beta-eta", "\\x. f x"});
    CHECK(r.out == "f\n");

    r = lcw_run({"reduce", "--fuel", "50", "(\\x. x x) (\\x. x x)"});
    CHECK(r.code == lcw::cli::kExhausted);

    r = lcw_run({"reduce", "--calculus", "combinatory", "S K K x"});
    CHECK(r.out == "x\n");

    r = lcw_run({"reduce", "--calculus", "stlc", "--context", "y:o", "(\\x:o. x) y"});
    CHECK(r.out == "y\n");

    r = lcw_run({"reduce", "--calculus", "systemf", "--prelude", "add 1 1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("f (f x)") != std::string::npos);

    r = lcw_run({"reduce", "-"}, "(\\x. x) z\n");
    CHECK(r.out == "z\n");
}

TEST_CASE("exit codes for user errors") {
    CHECK(lcw_run({"reduce", "(\\x"}).code == lcw::cli::kUserError);
    CHECK(lcw_run({"check", "\\x:o. x x"}).code == lcw::cli::kUserError);
    CHECK(lcw_run({"infer", "\\x. x x"}).code == lcw::cli::kUserError);
    CHECK(lcw_run({"frobnicate"}).code == lcw::cli::kUserError);
    CHECK(lcw_run({"reduce", "--mode", "gamma", "x"}).code == lcw::cli::kUserError);
    CHECK(lcw_run({"--help"}).code == 0);
    auto r = lcw_run({"parse", "(x"});
    CHECK(r.err.find("parse error") != std::string::npos);
    CHECK(r.err == lcw_run({"parse", "(x"}).err);
}

TEST_CASE("parse") {
    CHECK(lcw_run({"parse", "\\x y z. x z (y z)"}).out == "\\x y z. x z (y z)\n");
    CHECK(lcw_run({"--unicode", "parse", "\\x.x"}).out == "λx. x\n");
    CHECK(lcw_run({"parse", "--unicode", "--calculus", "systemf", "/\\a. \\x:a. x"}).out == "Λa. λx:a. x\n");
    auto r = lcw_run({"parse", "--json", "x y"});
    CHECK(r.out.find("\"kind\": \"app\"") != std::string::npos);
    CHECK(lcw_run({"parse", "--calculus", "type", "a * b -> c"}).out == "a * b -> c\n");
}

TEST_CASE("graph") {
    auto r = lcw_run({"graph", "(\\x.x)((\\x.x) x)"});
    CHECK(r.code == 0);
    CHECK(r.out.find("vertices: 3\nedges: 3\n") == 0);

    r = lcw_run({"graph", "--dot", "-", "(\\x. x x)(\\x. x x)"});
    CHECK(r.out == "digraph G {\n  n0 [label=\"(\\\\x. x x) \\\\x. x x\"];\n  n0 -> n0 [label=\"root\"];\n}\n");

    r = lcw_run({"graph", "--max-vertices", "5", "(\\x. x x x) (\\x. x x x)"});
    CHECK(r.code == lcw::cli::kExhausted);
    CHECK(r.out.find("truncated: yes") != std::string::npos);
}

TEST_CASE("check and infer") {
    CHECK(lcw_run({"check", "\\x:A. \\f:A -> B. f x"}).out == "A -> (A -> B) -> B\n");
    auto r = lcw_run({"check", "--derivation", "text", "\\x:A. x"});
    CHECK(r.out.find("(ax)") != std::string::npos);
    r = lcw_run({"check", "--derivation", "json", "\\x:A. x"});
    CHECK(r.out.find("\"premises\"") != std::string::npos);
    CHECK(lcw_run({"check", "--calculus", "pcf", "\\x:nat. iszero x"}).out == "nat -> bool\n");
    CHECK(lcw_run({"check", "--calculus", "systemf", "/\\a. \\x:a. x"}).out == "forall a. a -> a\n");
    CHECK(lcw_run({"check", "--calculus", "systemf", "--prelude", "add"}).out ==
          "(forall a. (a -> a) -> a -> a) -> (forall a. (a -> a) -> a -> a) -> forall a. (a -> a) -> a -> a\n");

    CHECK(lcw_run({"infer", "\\x.\\y. y x"}).out == "A -> (A -> B) -> B\n");
    CHECK(lcw_run({"infer", "x y"}).out == "x:B -> A, y:B |- A\n");
    r = lcw_run({"infer", "--verbose", "\\x. x"});
    CHECK(r.out.find("clause") != std::string::npos);
}

TEST_CASE("combinators") {
    CHECK(lcw_run({"sk", "\\x. x"}).out == "S K K\n");
    CHECK(lcw_run({"unsk", "--normalize", "S K K"}).out == "\\z. z\n");
}

TEST_CASE("encode and decode") {
    CHECK(lcw_run({"encode", "numeral", "2"}).out == "\\f x. f (f x)\n");
    CHECK(lcw_run({"encode", "bool", "true"}).out == "\\x y. x\n");
    CHECK(lcw_run({"encode", "--calculus", "pcf", "numeral", "3"}).out == "3\n");
    CHECK(lcw_run({"decode", "numeral", "(\\n f x. f (n f x)) (\\f x. f x)"}).out == "2\n");
    CHECK(lcw_run({"decode", "bool", "(\\a b. a b (\\x y. y)) (\\x y. x) (\\x y. x)"}).out == "true\n");
    CHECK(lcw_run({"decode", "numeral", "\\x. x"}).code == lcw::cli::kUserError);
    CHECK(lcw_run({"decode", "--fuel", "10", "numeral", "(\\x. x x) (\\x. x x)"}).code == lcw::cli::kExhausted);
    CHECK(lcw_run({"decode", "--calculus", "systemf", "--prelude", "numeral", "mult 2 3"}).out == "6\n");
    CHECK(lcw_run({"decode", "--calculus", "pcf", "bool", "iszero (pred 1)"}).out == "true\n");

    std::string tree = "branch(leaf(5), branch(leaf(8), leaf(7)))";
    auto enc = lcw_run({"encode", "--calculus", "systemf", "tree", tree});
    CHECK(enc.code == 0);
    CHECK(lcw_run({"decode", "--calculus", "systemf", "tree", enc.out}).out == tree + "\n");
    CHECK(lcw_run({"encode", "--calculus", "pcf", "tree", tree}).code == lcw::cli::kUserError);
}

TEST_CASE("eval") {
    CHECK(lcw_run({"eval", "--semantics", "small", "iszero (pred (succ zero))"}).out == "T\n");
    CHECK(lcw_run({"eval", "--semantics", "big", "iszero (pred (succ zero))"}).out == "T\n");
    CHECK(lcw_run({"eval", "--semantics", "denot", "iszero (pred (succ zero))"}).out == "T\n");
    CHECK(lcw_run({"eval", "(\\x:nat. succ x) 2"}).out == "3\n");
    CHECK(lcw_run({"eval", "--dialect", "parallel", "POR (Y (\\x:bool. x)) T"}).out == "T\n");

    auto r = lcw_run({"eval", "--fuel", "100", "Y (\\x:nat. x)"});
    CHECK(r.code == lcw::cli::kExhausted);
    r = lcw_run({"eval", "--semantics", "denot", "--fuel", "100", "Y (\\x:nat. x)"});
    CHECK(r.out == "⊥\n");
    CHECK(r.code == lcw::cli::kExhausted);
    r = lcw_run({"eval", "--semantics", "denot", "--fuel", "100000", "Y (\\x:nat. x)"});
    CHECK(r.code == lcw::cli::kExhausted);

    r = lcw_run({"eval", "--trace", "if iszero 0 then 1 else 2"});
    CHECK(r.out == "if iszero zero then 1 else 2\n-> if T then 1 else 2  [iszero-zero at 0]\n-> 1  [if-true at root]\n1\n");

    CHECK(lcw_run({"eval", "\\x:nat. x x"}).code == lcw::cli::kUserError);
    CHECK(lcw_run({"eval", "POR T F"}).code == lcw::cli::kUserError);
}

TEST_CASE("model") {
    std::string two = "\\f:o->o. \\x:o. f (f x)";
    std::string four = "\\f:o->o. \\x:o. f (f (f (f x)))";
    CHECK(lcw_run({"model", "--base-size", "2", two, "--compare", four}).out == "equal\n");
    CHECK(lcw_run({"model", "--base-size", "3", two, "--compare", four}).out == "different\n");
    CHECK(lcw_run({"model", "--base-size", "2", "--context", "x:o", "x"}).out == "x=0 |-> 0\nx=1 |-> 1\n");
    auto r = lcw_run({"model", "--poset", "bool->bool"});
    CHECK(r.out.find("elements: 11\n") == 0);
    CHECK(lcw_run({"model", "--poset", "bool"}).out.find("elements: 3\n") == 0);
    CHECK(lcw_run({"model", "--base-size", "9", "\\f:((o->o)->o)->o. f"}).code == lcw::cli::kExhausted);
}

TEST_CASE("repl") {
    std::string session =
        "let I = \\x. x\n"
        "let K = \\x y. x\n"
        "K I z\n"
        "let KI = K I\n"
        ":bindings\n"
        ":mode pcf\n"
        "let d = \\x:nat. succ (succ x)\n"
        "d 3\n"
        "I\n"
        ":mode nope\n"
        "(\n"
        ":help\n"
        ":quit\n"
        "ignored\n";
    auto r = lcw_run({"repl", "--quiet"}, session);
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::vector<std::string> got;
    for (std::string l; std::getline(lines, l);) got.push_back(l);
    REQUIRE(got.size() >= 11);
    CHECK(got[0] == "I = \\x. x");
    CHECK(got[1] == "K = \\x y. x");
    CHECK(got[2] == "\\x. x");
    CHECK(got[3] == "KI = (\\x y. x) \\x. x");
    CHECK(got[4] == "untyped I = \\x. x");
    CHECK(got[7] == "d = \\x:nat. succ (succ x)");
    CHECK(got[8] == "5 : nat");
    CHECK(got[9].find("type error") == 0);
    CHECK(got[10].find("error: unknown mode") == 0);
    CHECK(got[11].find("parse error") == 0);
    CHECK(r.out.find("ignored") == std::string::npos);

    auto prompts = lcw_run({"repl"}, "x\n");
    CHECK(prompts.out == "untyped> x\nuntyped> ");
}
