#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lcw {

/// Thrown when an operation's documented precondition does not hold.
class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Letter followed by letters, digits or underscores.
bool is_identifier(std::string_view text);

/// Strips trailing digits: "x12" -> "x". A name made only of digits is
/// returned unchanged.
std::string base_name(std::string_view name);

/// Least-fresh naming: base_name(hint) followed by the smallest positive
/// integer such that the result is not in `taken`.
std::string fresh_name(std::string_view hint, const std::set<std::string>& taken);

}  // namespace lcw
