#include "relex/fmt.hpp"

#include <cstdio>
#include <stdexcept>

namespace relex {

std::string format_frac4(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw std::invalid_argument("format_frac4: denominator must be > 0");
    bool negative = num < 0;
    unsigned long long n = negative ? static_cast<unsigned long long>(-num)
                                    : static_cast<unsigned long long>(num);
    unsigned long long d = static_cast<unsigned long long>(den);
    // scaled = round(n * 10^4 / d), half away from zero
    unsigned long long scaled = (n * 10000ULL + d / 2) / d;
    unsigned long long whole = scaled / 10000ULL;
    unsigned long long frac = scaled % 10000ULL;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s%llu.%04llu", negative ? "-" : "", whole, frac);
    return buf;
}

std::string fmt4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace relex
