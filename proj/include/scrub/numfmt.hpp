#pragma once

#include <charconv>
#include <string>

namespace scrub {

// Shortest decimal representation that round-trips to the same double.
// Keeps emitted CSV/JSON byte-stable across platforms.
inline std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

} // namespace scrub
