#pragma once

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>

#include "fibren/errors.hpp"
#include "fibren/interval.hpp"

namespace fibren {

// Hexadecimal float text: exact round-trip, no decimal loss.
inline std::string hex_of(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%a", x);
    return std::string(buf);
}

inline double hex_to_double(const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) throw CorruptEndpointFile("unparsable float: " + s);
    return v;
}

inline void write_interval_line(std::ostream& os, const Interval& a) {
    os << hex_of(a.lo) << ' ' << hex_of(a.hi) << '\n';
}

inline Interval read_interval_line(std::istream& is) {
    std::string lo, hi;
    if (!(is >> lo >> hi)) throw CorruptEndpointFile("truncated interval line");
    return Interval(hex_to_double(lo), hex_to_double(hi));
}

} // namespace fibren
