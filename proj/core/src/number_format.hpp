#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace tvd::detail {

// Shortest decimal form that round-trips; locale-independent.
inline std::string repr(double v) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

inline std::string repr(int v) { return std::to_string(v); }
inline std::string repr(std::uint64_t v) { return std::to_string(v); }

}  // namespace tvd::detail
