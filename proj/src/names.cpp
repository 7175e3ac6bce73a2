#include "lcw/names.hpp"

#include <cctype>

namespace lcw {

bool is_identifier(std::string_view text) {
    if (text.empty() || !std::isalpha(static_cast<unsigned char>(text.front()))) {
        return false;
    }
    for (char c : text) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
            return false;
        }
    }
    return true;
}

std::string base_name(std::string_view name) {
    auto end = name.size();
    while (end > 0 && std::isdigit(static_cast<unsigned char>(name[end - 1]))) {
        --end;
    }
    if (end == 0) {
        return std::string(name);
    }
    return std::string(name.substr(0, end));
}

std::string fresh_name(std::string_view hint, const std::set<std::string>& taken) {
    const std::string base = base_name(hint);
    for (unsigned long i = 1;; ++i) {
        std::string candidate = base + std::to_string(i);
        if (!taken.count(candidate)) {
            return candidate;
        }
    }
}

}  // namespace lcw
