#pragma once

#include <charconv>
#include <string>
#include <system_error>

#include "wcr/errors.hpp"

namespace wcr {

// Shortest decimal that round-trips the double exactly; locale-independent.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text, const char* what) {
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw ParameterError(std::string(what) + ": cannot parse number '" +
                             std::string(text) + "'");
    return v;
}

} // namespace wcr
