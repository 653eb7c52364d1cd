#pragma once
// Numeric formatting for CSV output: full precision, locale-free, with
// explicit "inf"/"nan" spellings so rows stay machine-parseable.

#include <cstdio>
#include <cstdint>
#include <cmath>
#include <string>

namespace drsim {

inline std::string csv_num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", x);
    return buf;
}

inline std::string csv_num(std::uint64_t x) { return std::to_string(x); }
inline std::string csv_num(std::uint32_t x) { return std::to_string(x); }
inline std::string csv_num(int x) { return std::to_string(x); }

}  // namespace drsim
