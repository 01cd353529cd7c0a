#pragma once

#include "padic_functions.hpp"
#include "rational.hpp"

namespace padicreg {

// Uniform interface over the coefficient rings used by the polynomial kit:
// exact rationals, capped-precision p-adics, quadratic extensions, and
// (specialized in multipoly.hpp) exact multivariate polynomials.
template <class R>
struct RingTraits;

template <>
struct RingTraits<Rational> {
    static Rational zero(const Rational&) { return Rational(0); }
    static bool is_exact_zero(const Rational& x) { return x == 0; }
    static Rational divide_exact(const Rational& a, const Rational& b) { return a / b; }
};

template <>
struct RingTraits<PadicNumber> {
    static PadicNumber zero(const PadicNumber& ctx) { return PadicNumber::exact_zero(ctx.prime()); }
    static bool is_exact_zero(const PadicNumber& x) { return x.is_exact_zero(); }
    static PadicNumber divide_exact(const PadicNumber& a, const PadicNumber& b) { return a / b; }
};

template <>
struct RingTraits<QuadExtElement> {
    static QuadExtElement zero(const QuadExtElement& ctx) {
        return QuadExtElement(PadicNumber::exact_zero(ctx.prime()),
                              PadicNumber::exact_zero(ctx.prime()), ctx.disc());
    }
    static bool is_exact_zero(const QuadExtElement& x) { return x.is_exact_zero(); }
    static QuadExtElement divide_exact(const QuadExtElement& a, const QuadExtElement& b) {
        return a / b;
    }
};

} // namespace padicreg
