#pragma once

#include "ring_traits.hpp"

namespace padicreg {

/**
 * Element a + b*sqrt(d) of Q(sqrt d) with d a non-square integer. The exact
 * counterpart of QuadExtElement, used by the rational oracle path when slopes
 * are quadratic irrationalities.
 */
struct QuadRational {
    Rational a, b;
    Int d;

    QuadRational() : a(0), b(0), d(0) {}
    QuadRational(Rational a_, Rational b_, Int d_) : a(std::move(a_)), b(std::move(b_)), d(std::move(d_)) {}
    static QuadRational from_rational(const Rational& r, const Int& d) {
        return QuadRational(r, 0, d);
    }

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    QuadRational operator-() const { return QuadRational(-a, -b, d); }
    QuadRational conj() const { return QuadRational(a, -b, d); }
    Rational norm() const { return a * a - Rational(d) * b * b; }

    friend QuadRational operator+(const QuadRational& x, const QuadRational& y) {
        return QuadRational(x.a + y.a, x.b + y.b, x.d == 0 ? y.d : x.d);
    }
    friend QuadRational operator-(const QuadRational& x, const QuadRational& y) {
        return x + (-y);
    }
    friend QuadRational operator*(const QuadRational& x, const QuadRational& y) {
        Int d = x.d == 0 ? y.d : x.d;
        return QuadRational(x.a * y.a + Rational(d) * x.b * y.b, x.a * y.b + x.b * y.a, d);
    }
    QuadRational inverse() const {
        Rational n = norm();
        if (n == 0) throw DomainError("inverse of zero in quadratic field");
        return QuadRational(a / n, -b / n, d);
    }
    friend QuadRational operator/(const QuadRational& x, const QuadRational& y) {
        return x * y.inverse();
    }
    friend bool operator==(const QuadRational& x, const QuadRational& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const QuadRational& x, const QuadRational& y) { return !(x == y); }
};

template <>
struct RingTraits<QuadRational> {
    static QuadRational zero(const QuadRational& ctx) { return QuadRational(0, 0, ctx.d); }
    static bool is_exact_zero(const QuadRational& x) { return x.is_zero(); }
    static QuadRational divide_exact(const QuadRational& x, const QuadRational& y) { return x / y; }
};

// strip square factors by trial division; radicands here stay small
inline void squarefree_split(Int n, Int& square, Int& rest) {
    square = 1;
    rest = 1;
    if (n < 0) {
        rest = -1;
        n = -n;
    }
    for (Int f = 2; f * f <= n && f < 100000; ++f)
        while (n % (f * f) == 0) {
            n /= f * f;
            square *= f;
        }
    rest *= n;
}

} // namespace padicreg
