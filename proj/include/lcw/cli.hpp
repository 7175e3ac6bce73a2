#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lcw::cli {

inline constexpr int kOk = 0;
/// Parse, type and usage errors.
inline constexpr int kUserError = 1;
/// Fuel, graph or model budgets exhausted.
inline constexpr int kExhausted = 2;

/// Runs one command line, `args` excluding the program name. `in` feeds the
/// REPL and `-` term arguments.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace lcw::cli
