// Exact rational numbers for the confusion parameter. The confound test
// H(x,y) <= eps*L must be evaluated in integer arithmetic: the boundary case
// H == eps*L flips the rule's branch, and floating point would make that
// platform-dependent.
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lexnet {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    friend bool operator==(const Rational&, const Rational&) = default;
};

// Normalized rational: gcd(num, den) == 1, den > 0.
inline Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("rational: denominator must be nonzero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

inline bool in_unit_interval(const Rational& r) {
    return r.num >= 0 && r.num <= r.den;
}

inline std::string to_string(const Rational& r) {
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

// Accepts "NUM/DEN", an integer, or a decimal with at most six fractional
// digits (converted exactly over a power-of-ten denominator). Anything else
// is rejected so the exact-threshold contract survives the CLI boundary.
Rational parse_rational(std::string_view text);

}  // namespace lexnet
