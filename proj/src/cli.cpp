#include "lcw/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "lcw/combinatory.hpp"
#include "lcw/encodings.hpp"
#include "lcw/export.hpp"
#include "lcw/infer.hpp"
#include "lcw/models.hpp"
#include "lcw/names.hpp"
#include "lcw/pcf.hpp"
#include "lcw/pcfdenot.hpp"
#include "lcw/stlc.hpp"
#include "lcw/syntax.hpp"
#include "lcw/systemf.hpp"

namespace lcw::cli {

namespace {

using syntax::PrintStyle;

class Exhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Io {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
    PrintStyle style = PrintStyle::Ascii;
};

std::string input(const std::string& text, std::istream& in) {
    if (text != "-") {
        return text;
    }
    return std::string(std::istreambuf_iterator<char>(in), {});
}

typed::Dialect dialect_of(const std::string& calculus) {
    if (calculus == "pcf") return typed::Dialect::Pcf;
    if (calculus == "parallel") return typed::Dialect::ParallelPcf;
    return typed::Dialect::Stlc;
}

unsigned long parse_count(const std::string& s, const char* what) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw UsageError(std::string("expected a natural number for ") + what + ", got '" + s + "'");
    }
    return std::stoul(s);
}

bool parse_bool_word(const std::string& s) {
    if (s == "true" || s == "T") return true;
    if (s == "false" || s == "F") return false;
    throw UsageError("expected true or false, got '" + s + "'");
}

/// Prints the start term and one `-> M` line per step; throws Exhausted
/// when `fuel` steps did not reach a normal form.
template <class T, class StepFn, class PrintFn>
void trace_loop(T current, StepFn&& step, PrintFn&& show, std::size_t fuel, Io& io) {
    io.out << show(current) << "\n";
    for (std::size_t steps = 0;; ++steps) {
        auto next = step(current);
        if (!next) {
            return;
        }
        if (steps == fuel) {
            throw Exhausted("fuel exhausted after " + std::to_string(steps) + " steps");
        }
        current = std::move(*next);
        io.out << "-> " << show(current) << "\n";
    }
}

template <class Result, class PrintFn>
void finish_normalize(const Result& r, PrintFn&& show, Io& io) {
    io.out << show(r.term) << "\n";
    if (r.exhausted) {
        throw Exhausted("fuel exhausted after " + std::to_string(r.steps) + " steps");
    }
}

template <class T, class LabelFn>
int emit_graph(const ReductionGraph<T>& g, LabelFn&& label, const std::string& dot_file, Io& io) {
    if (!dot_file.empty()) {
        std::string dot = exporter::export_dot(g, label);
        if (dot_file == "-") {
            io.out << dot;
        } else {
            std::ofstream f(dot_file);
            if (!f) {
                throw UsageError("cannot write " + dot_file);
            }
            f << dot;
        }
    }
    if (dot_file != "-") {
        io.out << "vertices: " << g.size() << "\n";
        io.out << "edges: " << g.edges.size() << "\n";
        io.out << "normal forms: " << g.normal_forms().size() << "\n";
        io.out << "truncated: " << (g.truncated ? "yes" : "no") << "\n";
        for (std::size_t i = 0; i < g.size(); ++i) {
            io.out << "n" << i << (g.normal[i] ? " (normal)" : "") << ": " << label(g.vertices[i]) << "\n";
        }
        for (const auto& e : g.edges) {
            io.out << "n" << e.source << " -> n" << e.target << " at " << exporter::path_label(e.position) << "\n";
        }
    }
    if (g.truncated) {
        io.err << "warning: graph truncated by the vertex or depth budget\n";
        return kExhausted;
    }
    return kOk;
}

systemf::FTerm load_fterm(const std::string& text, const systemf::FContext& ctx, bool prelude) {
    auto m = syntax::parse_fterm(text);
    return prelude ? systemf::with_encodings(m, ctx) : m;
}

// parse

struct ParseArgs {
    std::string calculus = "untyped";
    std::string term;
    bool json = false;
};

int cmd_parse(const ParseArgs& a, Io& io) {
    std::string text = input(a.term, io.in);
    auto emit = [&](const auto& value) {
        if (a.json) {
            io.out << exporter::to_json(value).dump(2) << "\n";
        } else {
            io.out << syntax::print(value, io.style) << "\n";
        }
    };
    if (a.calculus == "untyped") {
        emit(syntax::parse_untyped(text));
    } else if (a.calculus == "combinatory") {
        emit(syntax::parse_combinatory(text));
    } else if (a.calculus == "systemf") {
        emit(syntax::parse_fterm(text));
    } else if (a.calculus == "type") {
        emit(syntax::parse_type(text));
    } else if (a.calculus == "ftype") {
        emit(syntax::parse_ftype(text));
    } else {
        emit(syntax::parse_typed(text, dialect_of(a.calculus)));
    }
    return kOk;
}

// reduce

struct ReduceArgs {
    std::string calculus = "untyped";
    std::string mode = "beta";
    std::size_t fuel = 10000;
    bool trace = false;
    bool prelude = false;
    std::string context;
    std::string term;
};

int cmd_reduce(const ReduceArgs& a, Io& io) {
    std::string text = input(a.term, io.in);
    bool eta = a.mode == "beta-eta";
    if (a.calculus == "untyped") {
        auto m = syntax::parse_untyped(text);
        auto mode = eta ? untyped::Mode::BetaEta : untyped::Mode::Beta;
        auto show = [&](const untyped::Term& t) { return syntax::print(t, io.style); };
        if (a.trace) {
            trace_loop(m, [&](const untyped::Term& t) { return untyped::step_normal_order(t, mode); }, show,
                       a.fuel, io);
        } else {
            finish_normalize(untyped::normalize(m, mode, a.fuel), show, io);
        }
    } else if (a.calculus == "combinatory") {
        if (eta) {
            throw UsageError("combinatory reduction has no eta mode");
        }
        auto m = syntax::parse_combinatory(text);
        auto show = [&](const combinatory::CTerm& t) { return syntax::print(t, io.style); };
        if (a.trace) {
            trace_loop(m, [](const combinatory::CTerm& t) { return combinatory::cstep_leftmost(t); }, show, a.fuel,
                       io);
        } else {
            finish_normalize(combinatory::cnormalize(m, a.fuel), show, io);
        }
    } else if (a.calculus == "stlc") {
        auto ctx = syntax::parse_context(a.context);
        auto m = syntax::parse_typed(text);
        stlc::typecheck(ctx, m);
        auto mode = eta ? stlc::Mode::BetaEta : stlc::Mode::Beta;
        auto show = [&](const typed::TypedTerm& t) { return syntax::print(t, io.style); };
        if (a.trace) {
            trace_loop(
                m,
                [&](const typed::TypedTerm& t) -> std::optional<typed::TypedTerm> {
                    auto r = stlc::normalize_typed(ctx, t, mode, 1);
                    if (r.steps == 0) return std::nullopt;
                    return r.term;
                },
                show, a.fuel, io);
        } else {
            finish_normalize(stlc::normalize_typed(ctx, m, mode, a.fuel), show, io);
        }
    } else {
        auto ctx = syntax::parse_fcontext(a.context);
        auto m = load_fterm(text, ctx, a.prelude);
        systemf::ftypecheck(ctx, m);
        auto show = [&](const systemf::FTerm& t) { return syntax::print(t, io.style); };
        if (a.trace) {
            trace_loop(
                m,
                [&](const systemf::FTerm& t) -> std::optional<systemf::FTerm> {
                    auto r = systemf::fnormalize(t, 1, eta);
                    if (r.steps == 0) return std::nullopt;
                    return r.term;
                },
                show, a.fuel, io);
        } else {
            finish_normalize(systemf::fnormalize(m, a.fuel, eta), show, io);
        }
    }
    return kOk;
}

// graph

struct GraphArgs {
    std::string calculus = "untyped";
    std::string mode = "beta";
    std::size_t max_vertices = 200;
    std::size_t max_depth = 50;
    std::string dot;
    std::string context;
    bool prelude = false;
    std::string term;
};

int cmd_graph(const GraphArgs& a, Io& io) {
    std::string text = input(a.term, io.in);
    bool eta = a.mode == "beta-eta";
    if (a.calculus == "untyped") {
        auto g = untyped::reduction_graph(syntax::parse_untyped(text), a.max_vertices, a.max_depth,
                                          eta ? untyped::Mode::BetaEta : untyped::Mode::Beta);
        return emit_graph(g, [&](const untyped::Term& t) { return syntax::print(t, io.style); }, a.dot, io);
    }
    if (a.calculus == "combinatory") {
        auto g = combinatory::creduction_graph(syntax::parse_combinatory(text), a.max_vertices, a.max_depth);
        return emit_graph(g, [&](const combinatory::CTerm& t) { return syntax::print(t, io.style); }, a.dot, io);
    }
    if (a.calculus == "stlc") {
        auto ctx = syntax::parse_context(a.context);
        auto m = syntax::parse_typed(text);
        stlc::typecheck(ctx, m);
        auto g = stlc::typed_reduction_graph(ctx, m, stlc::StepOptions{eta, false}, a.max_vertices, a.max_depth);
        return emit_graph(g, [&](const typed::TypedTerm& t) { return syntax::print(t, io.style); }, a.dot, io);
    }
    auto ctx = syntax::parse_fcontext(a.context);
    auto m = load_fterm(text, ctx, a.prelude);
    systemf::ftypecheck(ctx, m);
    auto g = systemf::freduction_graph(m, eta, a.max_vertices, a.max_depth);
    return emit_graph(g, [&](const systemf::FTerm& t) { return syntax::print(t, io.style); }, a.dot, io);
}

// check

struct CheckArgs {
    std::string calculus = "stlc";
    std::string context;
    std::string derivation = "none";
    bool prelude = false;
    std::string term;
};

int cmd_check(const CheckArgs& a, Io& io) {
    std::string text = input(a.term, io.in);
    if (a.calculus == "systemf") {
        if (a.derivation != "none") {
            throw UsageError("derivations are rendered for stlc and pcf only");
        }
        auto ctx = syntax::parse_fcontext(a.context);
        auto m = load_fterm(text, ctx, a.prelude);
        io.out << syntax::print(systemf::ftypecheck(ctx, m), io.style) << "\n";
        return kOk;
    }
    auto dialect = dialect_of(a.calculus);
    auto ctx = syntax::parse_context(a.context);
    auto m = syntax::parse_typed(text, dialect);
    types::Type type = dialect == typed::Dialect::Stlc ? stlc::typecheck(ctx, m) : pcf::pcf_typecheck(ctx, m, dialect);
    if (a.derivation == "none") {
        io.out << syntax::print(type, io.style) << "\n";
        return kOk;
    }
    auto d = typed::derive(ctx, m, dialect);
    if (a.derivation == "json") {
        io.out << stlc::render_json(d) << "\n";
    } else {
        io.out << stlc::render_text(d, io.style != PrintStyle::Ascii);
    }
    return kOk;
}

// infer

struct InferArgs {
    bool verbose = false;
    bool annotated = false;
    std::string term;
};

std::string join_types(const std::vector<types::Type>& ts, PrintStyle style) {
    std::string out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out += (i ? ", " : "") + syntax::print(ts[i], style);
    }
    return out;
}

int cmd_infer(const InferArgs& a, Io& io) {
    auto m = syntax::parse_typed(input(a.term, io.in));
    auto r = infer::principal_type(m);
    if (a.verbose) {
        for (const auto& e : r.trace) {
            io.out << std::string(2 * e.depth, ' ') << "clause " << e.clause << ": " << join_types(e.lhs, io.style)
                   << " = " << join_types(e.rhs, io.style) << "\n";
        }
    }
    if (!r.principal) {
        std::string msg = r.failure ? r.failure->message : "no principal type";
        throw typed::TypeError(msg, r.failure ? r.failure->path : Path{}, "infer");
    }
    const auto& p = *r.principal;
    if (!p.ctx.empty()) {
        io.out << syntax::print(p.ctx, io.style) << " |- ";
    }
    io.out << syntax::print(p.type, io.style) << "\n";
    if (a.annotated) {
        io.out << syntax::print(p.annotated, io.style) << "\n";
    }
    return kOk;
}

// sk / unsk

struct SkArgs {
    bool normalize = false;
    std::size_t fuel = 10000;
    std::string term;
};

int cmd_sk(const SkArgs& a, Io& io) {
    io.out << syntax::print(combinatory::to_combinatory(syntax::parse_untyped(input(a.term, io.in))), io.style)
           << "\n";
    return kOk;
}

int cmd_unsk(const SkArgs& a, Io& io) {
    auto m = combinatory::to_lambda(syntax::parse_combinatory(input(a.term, io.in)));
    if (a.normalize) {
        finish_normalize(untyped::normalize(m, untyped::Mode::Beta, a.fuel),
                         [&](const untyped::Term& t) { return syntax::print(t, io.style); }, io);
    } else {
        io.out << syntax::print(m, io.style) << "\n";
    }
    return kOk;
}

// encode / decode

struct CodecArgs {
    std::string calculus = "untyped";
    std::string kind;
    std::string value;
    std::size_t fuel = 100000;
    bool prelude = false;
};

untyped::Term untyped_tree(const systemf::LTree& t) {
    if (t.is_leaf()) {
        return encodings::leaf(encodings::church_numeral(t.label));
    }
    return encodings::node(untyped_tree(t.kids[0]), untyped_tree(t.kids[1]));
}

int cmd_encode(const CodecArgs& a, Io& io) {
    std::string text = input(a.value, io.in);
    auto show = [&](const auto& t) { io.out << syntax::print(t, io.style) << "\n"; };
    if (a.kind == "numeral") {
        unsigned long n = parse_count(text, "numeral");
        if (a.calculus == "untyped") show(encodings::church_numeral(n));
        else if (a.calculus == "systemf") show(systemf::f_numeral(n));
        else show(typed::numeral(n));
    } else if (a.kind == "bool") {
        bool b = parse_bool_word(text);
        if (a.calculus == "untyped") show(encodings::church_bool(b));
        else if (a.calculus == "systemf") show(systemf::f_encodings().at(b ? "T" : "F").term);
        else show(b ? typed::TypedTerm::true_c() : typed::TypedTerm::false_c());
    } else {
        auto t = syntax::parse_tree(text);
        if (a.calculus == "untyped") show(untyped_tree(t));
        else if (a.calculus == "systemf") show(systemf::encode_tree(t));
        else throw UsageError("trees are encoded in the untyped calculus and System F only");
    }
    return kOk;
}

int decode_untyped(const CodecArgs& a, const std::string& text, Io& io) {
    auto m = syntax::parse_untyped(text);
    if (a.kind == "numeral") {
        auto d = encodings::decode_numeral(m, a.fuel);
        if (d.status == encodings::DecodeStatus::FuelExhausted) throw Exhausted("fuel exhausted while decoding");
        if (d.status == encodings::DecodeStatus::NotANumeral) {
            throw UsageError("not a numeral: " + syntax::print(d.normal_form, io.style));
        }
        io.out << d.value << "\n";
        return kOk;
    }
    if (a.kind == "tree") {
        throw UsageError("trees are decoded in System F only");
    }
    auto r = untyped::normalize(m, untyped::Mode::Beta, a.fuel);
    if (r.exhausted) throw Exhausted("fuel exhausted while decoding");
    auto b = encodings::match_bool(r.term);
    if (!b) throw UsageError("not a boolean: " + syntax::print(r.term, io.style));
    io.out << (*b ? "true" : "false") << "\n";
    return kOk;
}

int decode_systemf(const CodecArgs& a, const std::string& text, Io& io) {
    auto m = load_fterm(text, {}, a.prelude);
    systemf::ftypecheck({}, m);
    if (a.kind == "numeral") {
        auto n = systemf::classify_nat(m);
        if (!n) throw UsageError("not a closed term of type nat");
        io.out << *n << "\n";
    } else if (a.kind == "bool") {
        auto b = systemf::classify_bool(m);
        if (!b) throw UsageError("not a closed term of type bool");
        io.out << (*b ? "true" : "false") << "\n";
    } else {
        auto t = systemf::decode_tree(m);
        if (!t) throw UsageError("not a closed term of type tree");
        io.out << systemf::to_string(*t) << "\n";
    }
    return kOk;
}

int decode_pcf(const CodecArgs& a, const std::string& text, Io& io) {
    if (a.kind == "tree") {
        throw UsageError("trees are decoded in System F only");
    }
    auto m = syntax::parse_typed(text, typed::Dialect::Pcf);
    auto type = pcf::pcf_typecheck({}, m);
    if (type != (a.kind == "numeral" ? types::Type::nat() : types::Type::boolean())) {
        throw UsageError("expected a program of type " + std::string(a.kind == "numeral" ? "nat" : "bool"));
    }
    auto r = pcf::eval_small(m, a.fuel);
    if (r.outcome == pcf::Outcome::FuelExhausted) throw Exhausted("fuel exhausted while decoding");
    if (!r.ok()) throw UsageError("evaluation " + pcf::to_string(r.outcome));
    if (auto n = typed::as_numeral(r.term)) {
        io.out << *n << "\n";
    } else {
        io.out << (r.term.is(typed::Kind::True) ? "true" : "false") << "\n";
    }
    return kOk;
}

int cmd_decode(const CodecArgs& a, Io& io) {
    std::string text = input(a.value, io.in);
    if (a.calculus == "untyped") return decode_untyped(a, text, io);
    if (a.calculus == "systemf") return decode_systemf(a, text, io);
    return decode_pcf(a, text, io);
}

// eval

struct EvalArgs {
    std::string semantics = "small";
    std::string dialect = "pcf";
    std::size_t fuel = 10000;
    bool trace = false;
    bool verbose = false;
    std::string term;
};

int cmd_eval(const EvalArgs& a, Io& io) {
    auto dialect = dialect_of(a.dialect);
    auto m = syntax::parse_typed(input(a.term, io.in), dialect);
    pcf::pcf_typecheck({}, m, dialect);
    if (a.semantics == "denot") {
        auto d = pcfdenot::denote_counted({}, m, {}, a.fuel, dialect);
        io.out << pcfdenot::to_string(d.value) << "\n";
        if (a.verbose) {
            io.err << "unfoldings: " << d.unfoldings << "\n";
        }
        if (d.value.is_bottom() && (d.starved || d.depth_limited)) {
            throw Exhausted(d.depth_limited ? "nesting limit reached; the approximation is bottom"
                                            : "Y fuel exhausted; the approximation is bottom");
        }
        return kOk;
    }
    pcf::EvalOptions opts{dialect, {}, a.trace};
    auto r = a.semantics == "big" ? pcf::eval_big(m, a.fuel, opts) : pcf::eval_small(m, a.fuel, opts);
    if (a.trace) {
        io.out << syntax::print(m, io.style) << "\n";
        for (const auto& s : r.trace) {
            if (s.term) {
                io.out << "-> " << syntax::print(*s.term, io.style) << "  [" << s.rule << " at "
                       << exporter::path_label(s.position) << "]\n";
            }
        }
    }
    if (a.verbose) {
        io.err << "steps: " << r.steps << "\n";
    }
    switch (r.outcome) {
        case pcf::Outcome::Value:
            io.out << syntax::print(r.term, io.style) << "\n";
            return kOk;
        case pcf::Outcome::FuelExhausted:
            throw Exhausted(std::string(r.depth_limited ? "nesting limit" : "fuel") + " exhausted after " +
                            std::to_string(r.steps) + " steps");
        default:
            throw UsageError("evaluation " + pcf::to_string(r.outcome) + " at " + syntax::print(r.term, io.style));
    }
}

// model

struct ModelArgs {
    std::size_t base_size = 2;
    std::string type;
    std::string context;
    std::string poset;
    std::string compare;
    std::string term;
};

void print_poset(const pcfdenot::FinitePoset& p, Io& io) {
    io.out << "elements: " << p.size() << "\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        io.out << "  " << p.label(i) << "\n";
    }
    io.out << "order:\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            bool covers = i != j && p.leq(i, j);
            for (std::size_t k = 0; covers && k < p.size(); ++k) {
                if (k != i && k != j && p.leq(i, k) && p.leq(k, j)) covers = false;
            }
            if (covers) {
                io.out << "  " << p.label(i) << " < " << p.label(j) << "\n";
            }
        }
    }
}

int cmd_model(const ModelArgs& a, Io& io) {
    if (!a.poset.empty()) {
        auto b = pcfdenot::FinitePoset::lifted_bool();
        if (a.poset == "bool") {
            print_poset(b, io);
        } else {
            print_poset(pcfdenot::function_poset(b, b), io);
        }
        return kOk;
    }
    if (a.term.empty()) {
        throw UsageError("model needs a term or --poset");
    }
    auto ctx = syntax::parse_context(a.context);
    auto m = syntax::parse_typed(input(a.term, io.in));
    auto type = a.type.empty() ? stlc::typecheck(ctx, m) : syntax::parse_type(a.type);
    auto base = models::BaseAssignment::all(a.base_size);
    auto table = models::interp_term(ctx, m, type, base);
    if (!a.compare.empty()) {
        auto other = models::interp_term(ctx, syntax::parse_typed(a.compare), type, base);
        io.out << (table == other ? "equal" : "different") << "\n";
        return kOk;
    }
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
        if (!ctx.empty()) {
            auto env = table.env_at(i);
            for (std::size_t k = 0; k < env.size(); ++k) {
                io.out << (k ? ", " : "") << ctx[k].first << "=" << env[k];
            }
            io.out << " |-> ";
        }
        io.out << models::to_string(table.entries[i]) << "\n";
    }
    return kOk;
}

// repl

const char* kReplHelp =
    "  let NAME = TERM   bind NAME in the current mode\n"
    "  TERM              normalize (untyped, combinatory), typecheck and normalize (stlc, systemf),\n"
    "                    or typecheck and evaluate (pcf, parallel)\n"
    "  :mode MODE        untyped | combinatory | stlc | systemf | pcf | parallel\n"
    "  :bindings         list bindings\n"
    "  :help             this text\n"
    "  :quit             leave\n";

class Repl {
  public:
    Repl(Io& io, bool quiet, std::size_t fuel) : io_(io), quiet_(quiet), fuel_(fuel) {}

    int loop() {
        std::string line;
        while (true) {
            if (!quiet_) io_.out << mode_ << "> " << std::flush;
            if (!std::getline(io_.in, line)) break;
            auto trimmed = trim(line);
            if (trimmed.empty()) continue;
            if (trimmed == ":quit" || trimmed == ":q") break;
            try {
                handle(trimmed);
            } catch (const syntax::ParseError& e) {
                io_.out << "parse error: " << e.what() << "\n";
            } catch (const typed::TypeError& e) {
                io_.out << "type error: " << e.what() << "\n";
            } catch (const Exhausted& e) {
                io_.out << "exhausted: " << e.what() << "\n";
            } catch (const std::exception& e) {
                io_.out << "error: " << e.what() << "\n";
            }
        }
        return kOk;
    }

  private:
    struct Binding {
        std::string mode;
        std::string name;
        std::string text;
    };

    static std::string trim(const std::string& s) {
        auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return "";
        auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    void handle(const std::string& line) {
        if (line == ":help") {
            io_.out << kReplHelp;
        } else if (line == ":bindings") {
            for (const auto& b : bindings_) {
                io_.out << b.mode << " " << b.name << " = " << b.text << "\n";
            }
        } else if (line.rfind(":mode", 0) == 0) {
            auto m = trim(line.substr(5));
            static const std::vector<std::string> modes{"untyped", "combinatory", "stlc", "systemf", "pcf", "parallel"};
            if (std::find(modes.begin(), modes.end(), m) == modes.end()) {
                throw UsageError("unknown mode '" + m + "'");
            }
            mode_ = m;
        } else if (line[0] == ':') {
            throw UsageError("unknown command " + line);
        } else if (line.rfind("let ", 0) == 0) {
            auto eq = line.find('=');
            if (eq == std::string::npos) throw UsageError("expected let NAME = TERM");
            auto name = trim(line.substr(4, eq - 4));
            if (!is_identifier(name)) throw UsageError("bad binding name '" + name + "'");
            auto text = expanded_text(trim(line.substr(eq + 1)));
            std::erase_if(bindings_, [&](const Binding& b) { return b.mode == mode_ && b.name == name; });
            bindings_.push_back({mode_, name, text});
            io_.out << name << " = " << text << "\n";
        } else {
            evaluate(line);
        }
    }

    std::vector<const Binding*> visible() const {
        std::vector<const Binding*> out;
        for (const auto& b : bindings_) {
            if (b.mode == mode_) out.push_back(&b);
        }
        return out;
    }

    /// Parses in the current mode, substitutes bindings, prints back.
    std::string expanded_text(const std::string& text) const {
        const auto& s = PrintStyle::Ascii;
        if (mode_ == "untyped") return syntax::print(expand_untyped(text), s);
        if (mode_ == "combinatory") return syntax::print(expand_comb(text), s);
        if (mode_ == "systemf") return syntax::print(expand_f(text), s);
        return syntax::print(expand_typed(text), s);
    }

    untyped::Term expand_untyped(const std::string& text) const {
        auto m = syntax::parse_untyped(text);
        for (const auto* b : visible()) m = untyped::subst(m, syntax::parse_untyped(b->text), b->name);
        return m;
    }
    combinatory::CTerm expand_comb(const std::string& text) const {
        auto m = syntax::parse_combinatory(text);
        for (const auto* b : visible()) m = combinatory::csubst(m, syntax::parse_combinatory(b->text), b->name);
        return m;
    }
    systemf::FTerm expand_f(const std::string& text) const {
        auto m = syntax::parse_fterm(text);
        for (const auto* b : visible()) m = systemf::subst(m, syntax::parse_fterm(b->text), b->name);
        return m;
    }
    typed::TypedTerm expand_typed(const std::string& text) const {
        auto d = dialect_of(mode_);
        auto m = syntax::parse_typed(text, d);
        for (const auto* b : visible()) m = typed::subst(m, syntax::parse_typed(b->text, d), b->name);
        return m;
    }

    void evaluate(const std::string& text) {
        auto st = io_.style;
        if (mode_ == "untyped") {
            auto r = untyped::normalize(expand_untyped(text), untyped::Mode::Beta, fuel_);
            report(syntax::print(r.term, st), r.exhausted);
        } else if (mode_ == "combinatory") {
            auto r = combinatory::cnormalize(expand_comb(text), fuel_);
            report(syntax::print(r.term, st), r.exhausted);
        } else if (mode_ == "systemf") {
            auto m = systemf::with_encodings(expand_f(text));
            auto a = systemf::ftypecheck({}, m);
            auto r = systemf::fnormalize(m, fuel_);
            report(syntax::print(r.term, st) + " : " + syntax::print(a, st), r.exhausted);
        } else if (mode_ == "stlc") {
            auto m = expand_typed(text);
            auto a = stlc::typecheck({}, m);
            auto r = stlc::normalize_typed({}, m, stlc::Mode::Beta, fuel_);
            report(syntax::print(r.term, st) + " : " + syntax::print(a, st), r.exhausted);
        } else {
            auto d = dialect_of(mode_);
            auto m = expand_typed(text);
            auto a = pcf::pcf_typecheck({}, m, d);
            auto r = pcf::eval_small(m, fuel_, {d, {}, false});
            if (r.outcome == pcf::Outcome::Value) {
                io_.out << syntax::print(r.term, st) << " : " << syntax::print(a, st) << "\n";
            } else {
                io_.out << pcf::to_string(r.outcome) << " after " << r.steps << " steps: " << syntax::print(r.term, st)
                        << "\n";
            }
        }
    }

    void report(const std::string& text, bool exhausted) {
        io_.out << text << "\n";
        if (exhausted) io_.out << "(fuel exhausted)\n";
    }

    Io& io_;
    bool quiet_;
    std::size_t fuel_;
    std::string mode_ = "untyped";
    std::vector<Binding> bindings_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Workbench for the untyped, combinatory, simply typed, System F and PCF calculi", "lcw"};
    app.require_subcommand(1);
    app.fallthrough();
    bool unicode = false;
    app.add_flag("--unicode", unicode, "Print λ, Λ and ∀ instead of ASCII");

    auto calculi = [](std::initializer_list<std::string> names) { return CLI::IsMember(std::vector<std::string>(names)); };
    auto modes = CLI::IsMember(std::vector<std::string>{"beta", "beta-eta"});

    ParseArgs pa;
    auto* parse = app.add_subcommand("parse", "Parse a term and print it back (or as JSON)");
    parse->add_option("--calculus", pa.calculus, "Calculus of the term")
        ->check(calculi({"untyped", "combinatory", "stlc", "pcf", "parallel", "systemf", "type", "ftype"}));
    parse->add_flag("--json", pa.json, "Print the syntax tree as JSON");
    parse->add_option("term", pa.term, "Term text, or - for stdin")->required();

    ReduceArgs ra;
    auto* reduce = app.add_subcommand("reduce", "Normalize by leftmost-outermost reduction");
    reduce->add_option("--calculus", ra.calculus)->check(calculi({"untyped", "combinatory", "stlc", "systemf"}));
    reduce->add_option("--mode", ra.mode)->check(modes);
    reduce->add_option("--fuel", ra.fuel, "Maximum number of steps")->check(CLI::PositiveNumber);
    reduce->add_flag("--trace", ra.trace, "Print every intermediate term");
    reduce->add_option("--context", ra.context, "Typing context, e.g. \"x:A, f:A->B\"");
    reduce->add_flag("--prelude", ra.prelude, "System F: bind the standard encodings (T, add, pair, ...)");
    reduce->add_option("term", ra.term)->required();

    GraphArgs ga;
    auto* graph = app.add_subcommand("graph", "Explore the reduction graph");
    graph->add_option("--calculus", ga.calculus)->check(calculi({"untyped", "combinatory", "stlc", "systemf"}));
    graph->add_option("--mode", ga.mode)->check(modes);
    graph->add_option("--max-vertices", ga.max_vertices)->check(CLI::PositiveNumber);
    graph->add_option("--max-depth", ga.max_depth)->check(CLI::PositiveNumber);
    graph->add_option("--dot", ga.dot, "Write DOT to this file (- for stdout)");
    graph->add_option("--context", ga.context);
    graph->add_flag("--prelude", ga.prelude);
    graph->add_option("term", ga.term)->required();

    CheckArgs ca;
    auto* check = app.add_subcommand("check", "Typecheck an annotated term");
    check->add_option("--calculus", ca.calculus)->check(calculi({"stlc", "pcf", "parallel", "systemf"}));
    check->add_option("--context", ca.context);
    check->add_option("--derivation", ca.derivation)->check(calculi({"none", "text", "json"}));
    check->add_flag("--prelude", ca.prelude);
    check->add_option("term", ca.term)->required();

    InferArgs ia;
    auto* inferc = app.add_subcommand("infer", "Principal type of an unannotated term");
    inferc->add_flag("--verbose", ia.verbose, "Print the unification trace");
    inferc->add_flag("--annotated", ia.annotated, "Print the term with principal annotations");
    inferc->add_option("term", ia.term)->required();

    SkArgs sa;
    auto* sk = app.add_subcommand("sk", "Translate a lambda term to S and K");
    sk->add_option("term", sa.term)->required();
    SkArgs ua;
    auto* unsk = app.add_subcommand("unsk", "Translate an S/K term to a lambda term");
    unsk->add_flag("--normalize", ua.normalize, "Beta-normalize the result");
    unsk->add_option("--fuel", ua.fuel)->check(CLI::PositiveNumber);
    unsk->add_option("term", ua.term)->required();

    auto kinds = CLI::IsMember(std::vector<std::string>{"numeral", "bool", "tree"});
    auto codec_calculi = calculi({"untyped", "systemf", "pcf"});
    CodecArgs ea;
    auto* encode = app.add_subcommand("encode", "Encode a number, boolean or tree");
    encode->add_option("--calculus", ea.calculus)->check(codec_calculi);
    encode->add_option("kind", ea.kind)->required()->check(kinds);
    encode->add_option("value", ea.value, "e.g. 3, true, \"branch(leaf 5, leaf 7)\"")->required();
    CodecArgs da;
    auto* decode = app.add_subcommand("decode", "Decode a term as a number, boolean or tree");
    decode->add_option("--calculus", da.calculus)->check(codec_calculi);
    decode->add_option("--fuel", da.fuel)->check(CLI::PositiveNumber);
    decode->add_flag("--prelude", da.prelude);
    decode->add_option("kind", da.kind)->required()->check(kinds);
    decode->add_option("term", da.value)->required();

    EvalArgs va;
    auto* eval = app.add_subcommand("eval", "Run a closed PCF program");
    eval->add_option("--semantics", va.semantics)->check(calculi({"small", "big", "denot"}));
    eval->add_option("--dialect", va.dialect)->check(calculi({"pcf", "parallel"}));
    eval->add_option("--fuel", va.fuel, "Steps (small), rule applications (big) or Y unfoldings (denot)");
    eval->add_flag("--trace", va.trace, "Print each small step with its rule");
    eval->add_flag("--verbose", va.verbose, "Report steps or unfoldings on stderr");
    eval->add_option("term", va.term)->required();

    ModelArgs ma;
    auto* model = app.add_subcommand("model", "Finite set-theoretic tables and small posets");
    model->add_option("--base-size", ma.base_size, "Size of every base set")->check(CLI::PositiveNumber);
    model->add_option("--type", ma.type, "Interpret at this type instead of the checked one");
    model->add_option("--context", ma.context);
    model->add_option("--poset", ma.poset, "Print the lifted booleans or the monotone maps on them")
        ->check(calculi({"bool", "bool->bool"}));
    model->add_option("--compare", ma.compare, "Report whether this term has the same table");
    model->add_option("term", ma.term);

    bool quiet = false;
    std::size_t repl_fuel = 10000;
    auto* repl = app.add_subcommand("repl", "Interactive loop with let bindings");
    repl->add_flag("--quiet", quiet, "No prompts");
    repl->add_option("--fuel", repl_fuel)->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUserError;
    }

    Io io{in, out, err, unicode ? PrintStyle::Unicode : PrintStyle::Ascii};
    try {
        if (*parse) return cmd_parse(pa, io);
        if (*reduce) return cmd_reduce(ra, io);
        if (*graph) return cmd_graph(ga, io);
        if (*check) return cmd_check(ca, io);
        if (*inferc) return cmd_infer(ia, io);
        if (*sk) return cmd_sk(sa, io);
        if (*unsk) return cmd_unsk(ua, io);
        if (*encode) return cmd_encode(ea, io);
        if (*decode) return cmd_decode(da, io);
        if (*eval) return cmd_eval(va, io);
        if (*model) return cmd_model(ma, io);
        if (*repl) return Repl(io, quiet, repl_fuel).loop();
    } catch (const syntax::ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kUserError;
    } catch (const typed::TypeError& e) {
        err << "type error: " << e.what() << "\n";
        return kUserError;
    } catch (const Exhausted& e) {
        err << "exhausted: " << e.what() << "\n";
        return kExhausted;
    } catch (const models::ModelOverflow& e) {
        err << "exhausted: " << e.what() << "\n";
        return kExhausted;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUserError;
    }
    return kUserError;
}

}  // namespace lcw::cli
