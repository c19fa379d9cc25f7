#pragma once

// Minimal exact rational, just enough to keep lambda^2 = k(k+n-1)/p exact.

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace loclab {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d)
    {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        normalize();
    }

    void normalize()
    {
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    friend Rational operator*(Rational a, Rational b)
    {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend Rational operator-(Rational a, Rational b)
    {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend bool operator==(Rational a, Rational b)
    {
        return a.num == b.num && a.den == b.den;
    }

    bool positive() const { return num > 0; }

    template <class Real> Real to() const
    {
        return static_cast<Real>(num) / static_cast<Real>(den);
    }
};

} // namespace loclab
