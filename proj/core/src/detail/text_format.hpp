#pragma once

#include <charconv>
#include <string>

namespace edpc::detail {

// Shortest round-trip decimal form; locale independent.
inline void append_double(std::string& out, double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    out.append(buf, ptr);
}

} // namespace edpc::detail
