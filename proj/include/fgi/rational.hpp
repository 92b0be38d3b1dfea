#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace fgi {

// Exact rational arithmetic for the small stage coefficients (1/6, 1/72, ...)
// that admit it. Overflow makes the value invalid instead of wrapping, so a
// computation can fall back to floating point.
struct rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool valid = true;

    rational() = default;
    rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (d == 0) throw std::invalid_argument("rational: zero denominator");
        normalize();
    }

    static rational invalid_value() {
        rational r;
        r.valid = false;
        return r;
    }

    void normalize() {
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    long double to_ld() const { return static_cast<long double>(num) / static_cast<long double>(den); }
    bool is_zero() const { return valid && num == 0; }

    friend bool operator==(const rational& a, const rational& b) {
        return a.valid && b.valid && a.num == b.num && a.den == b.den;
    }
};

namespace detail {
inline bool mul_overflows(std::int64_t a, std::int64_t b) {
    __int128 p = static_cast<__int128>(a) * b;
    return p > INT64_MAX || p < INT64_MIN;
}
} // namespace detail

inline rational operator*(const rational& a, const rational& b) {
    if (!a.valid || !b.valid) return rational::invalid_value();
    // cross-reduce first to keep intermediates small
    rational x(a.num, b.den), y(b.num, a.den);
    if (detail::mul_overflows(x.num, y.num) || detail::mul_overflows(x.den, y.den))
        return rational::invalid_value();
    return rational(x.num * y.num, x.den * y.den);
}

inline rational operator/(const rational& a, const rational& b) {
    if (!a.valid || !b.valid || b.num == 0) return rational::invalid_value();
    return a * rational(b.den, b.num);
}

inline rational operator+(const rational& a, const rational& b) {
    if (!a.valid || !b.valid) return rational::invalid_value();
    const std::int64_t g = std::gcd(a.den, b.den);
    const std::int64_t dl = a.den / g;
    const std::int64_t dr = b.den / g;
    if (detail::mul_overflows(a.num, dr) || detail::mul_overflows(b.num, dl) ||
        detail::mul_overflows(a.den, dr))
        return rational::invalid_value();
    const std::int64_t n1 = a.num * dr, n2 = b.num * dl;
    if ((n2 > 0 && n1 > INT64_MAX - n2) || (n2 < 0 && n1 < INT64_MIN - n2))
        return rational::invalid_value();
    return rational(n1 + n2, a.den * dr);
}

inline rational operator-(const rational& a, const rational& b) {
    rational nb = b;
    nb.num = -nb.num;
    return a + nb;
}

inline rational operator-(const rational& a) {
    rational r = a;
    r.num = -r.num;
    return r;
}

} // namespace fgi
