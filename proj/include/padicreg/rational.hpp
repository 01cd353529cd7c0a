#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace padicreg {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int pow_int(const Int& base, unsigned long e) {
    Int r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// largest e with p^e | n (n != 0)
inline long valuation_int(Int n, const Int& p) {
    if (n == 0) throw DomainError("valuation of zero");
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline Int mod_positive(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Int mod_inverse(const Int& a, const Int& m) {
    // extended Euclid
    Int t = 0, newt = 1, r = m, newr = mod_positive(a, m);
    while (newr != 0) {
        Int q = r / newr;
        Int tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw DomainError("non-invertible element in modular inverse");
    return mod_positive(t, m);
}

inline long valuation_rational(const Rational& x, const Int& p) {
    return valuation_int(boost::multiprecision::numerator(x), p) -
           valuation_int(boost::multiprecision::denominator(x), p);
}

// Reconstruct a/b from u mod m with |a|, b <= sqrt(m/2); returns false if none exists.
inline bool rational_reconstruct(const Int& u, const Int& m, Rational& out) {
    Int bound;
    {
        Int lo = 0, hi = m;
        while (lo < hi) { // isqrt(m/2)
            Int mid = (lo + hi + 1) / 2;
            if (mid * mid <= m / 2)
                lo = mid;
            else
                hi = mid - 1;
        }
        bound = lo;
    }
    Int r0 = m, r1 = mod_positive(u, m);
    Int t0 = 0, t1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0) return false;
    Int num = r1, den = t1;
    if (den < 0) {
        den = -den;
        num = -num;
    }
    if (den > bound || boost::multiprecision::gcd(boost::multiprecision::abs(num), den) != 1)
        return false;
    out = Rational(num, den);
    return true;
}

inline Int ceil_rational(const Rational& x) {
    Int n = boost::multiprecision::numerator(x);
    Int d = boost::multiprecision::denominator(x);
    Int q = n / d;
    if (n % d != 0 && n > 0) ++q;
    return q;
}

} // namespace padicreg
