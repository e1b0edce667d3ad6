#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace kcolor {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

/// "num/den" in lowest terms; integers print without a denominator.
inline std::string to_fraction(const BigRational& r) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const BigRational& r) { return r.convert_to<double>(); }

inline BigInt ipow(BigInt base, unsigned exp) {
    BigInt out = 1;
    while (exp) {
        if (exp & 1U) out *= base;
        base *= base;
        exp >>= 1U;
    }
    return out;
}

/// Integer power on 64-bit values; callers keep results small (matrix dimensions, counts).
constexpr std::uint64_t upow(std::uint64_t base, unsigned exp) {
    std::uint64_t out = 1;
    while (exp--) out *= base;
    return out;
}

}  // namespace kcolor
