#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lcw/combinatory.hpp"
#include "lcw/systemf.hpp"
#include "lcw/typed_term.hpp"
#include "lcw/types.hpp"
#include "lcw/untyped.hpp"

namespace lcw::syntax {

struct SourceSpan {
    std::size_t start = 0;
    std::size_t end = 0;
    std::size_t line = 1;
    std::size_t column = 1;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(SourceSpan span, std::vector<std::string> expected, std::string found);

    const SourceSpan& span() const { return span_; }
    const std::vector<std::string>& expected() const { return expected_; }
    const std::string& found() const { return found_; }

  private:
    SourceSpan span_;
    std::vector<std::string> expected_;
    std::string found_;
};

/// Ascii: `\x y. x y`. Unicode: `λx y. x y`. Compact: `λxy.xy`, names
/// juxtaposed (spaces are kept when some name is longer than one letter).
enum class PrintStyle { Ascii, Unicode, Compact };

untyped::Term parse_untyped(std::string_view text);
std::string print(const untyped::Term& m, PrintStyle style = PrintStyle::Ascii);

/// `S`, `K`, identifiers and parentheses; `I` abbreviates `S K K`.
combinatory::CTerm parse_combinatory(std::string_view text);
std::string print(const combinatory::CTerm& a, PrintStyle style = PrintStyle::Ascii);

/// Types: `1`, `0`, identifiers (base types), `->` (right associative),
/// `*` and `+` (left associative, binding tighter than `->`).
types::Type parse_type(std::string_view text);
std::string print(const types::Type& a, PrintStyle style = PrintStyle::Ascii);

/// Typed terms. Binders are written `\x:A. M`; PCF keywords (`T`, `F`,
/// `zero`, `succ`, `pred`, `iszero`, `if`, `Y`, numerals) are recognised in
/// the PCF dialects and `POR` only in the parallel one.
typed::TypedTerm parse_typed(std::string_view text, typed::Dialect dialect = typed::Dialect::Stlc);
std::string print(const typed::TypedTerm& m, PrintStyle style = PrintStyle::Ascii);

/// `x:A, y:B`; empty text gives the empty context.
typed::Context parse_context(std::string_view text);
std::string print(const typed::Context& ctx, PrintStyle style = PrintStyle::Ascii);

/// System F types: `forall a b. A` (or `∀`), `->`, and the abbreviations
/// `bool`, `nat`, `tree`, `1`, `0`, `A * B`, `A + B` for their encodings.
systemf::FType parse_ftype(std::string_view text);
std::string print(const systemf::FType& a, PrintStyle style = PrintStyle::Ascii);

/// System F terms: `\x:A. M`, `/\a. M` (or `Λ`), type application `M [A]`;
/// a number n stands for the Church numeral.
systemf::FTerm parse_fterm(std::string_view text);
std::string print(const systemf::FTerm& m, PrintStyle style = PrintStyle::Ascii);

systemf::FContext parse_fcontext(std::string_view text);

/// `leaf(5)` (or `leaf 5`) and `branch(l, r)`.
systemf::LTree parse_tree(std::string_view text);

}  // namespace lcw::syntax
