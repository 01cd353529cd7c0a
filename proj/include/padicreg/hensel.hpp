#pragma once

#include <vector>

#include "unipoly.hpp"

namespace padicreg {

// Dense polynomials with coefficients in Z/p^k, little-endian. Internal to the
// Hensel machinery; degrees stay <= 8 here so schoolbook arithmetic is fine.
namespace modpoly {

using Poly = std::vector<Int>;

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Poly mul(const Poly& a, const Poly& b, const Int& mod) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % mod;
    trim(r);
    return r;
}
inline Poly add(const Poly& a, const Poly& b, const Int& mod) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
        r[i] = mod_positive(r[i], mod);
    }
    trim(r);
    return r;
}
inline Poly sub(const Poly& a, const Poly& b, const Int& mod) {
    Poly nb = b;
    for (auto& x : nb) x = mod_positive(-x, mod);
    return add(a, nb, mod);
}
inline Poly scale(const Poly& a, const Int& c, const Int& mod) {
    Poly r = a;
    for (auto& x : r) x = mod_positive(x * c, mod);
    trim(r);
    return r;
}

// division with remainder; lc(g) must be invertible mod `mod`
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& g, const Int& mod) {
    if (g.empty()) throw DomainError("modpoly division by zero");
    Int lcinv = mod_inverse(g.back(), mod);
    Poly q;
    trim(a);
    if (deg(a) >= deg(g)) q.assign(static_cast<std::size_t>(deg(a) - deg(g)) + 1, 0);
    while (deg(a) >= deg(g) && !a.empty()) {
        Int c = mod_positive(a.back() * lcinv, mod);
        int shift = deg(a) - deg(g);
        q[static_cast<std::size_t>(shift)] = c;
        for (std::size_t i = 0; i < g.size(); ++i)
            a[static_cast<std::size_t>(shift) + i] =
                mod_positive(a[static_cast<std::size_t>(shift) + i] - c * g[i], mod);
        trim(a);
    }
    trim(q);
    return {q, a};
}

// extended gcd over F_p; returns (g, u, v) with u*a + v*b = g, g monic
inline std::tuple<Poly, Poly, Poly> egcd(Poly a, Poly b, const Int& p) {
    Poly u0{Int(1)}, v0, u1, v1{Int(1)};
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto [q, r] = divmod(a, b, p);
        Poly nu = sub(u0, mul(q, u1, p), p);
        Poly nv = sub(v0, mul(q, v1, p), p);
        a = b;
        b = r;
        u0 = u1;
        v0 = v1;
        u1 = nu;
        v1 = nv;
    }
    if (!a.empty() && a.back() != 1) {
        Int inv = mod_inverse(a.back(), p);
        a = scale(a, inv, p);
        u0 = scale(u0, inv, p);
        v0 = scale(v0, inv, p);
    }
    return {a, u0, v0};
}

} // namespace modpoly

// integer coefficient vector of f modulo p^k; requires p-adic integer coefficients
// known to absolute precision >= k
inline modpoly::Poly to_modpoly(const UniPoly<PadicNumber>& f, unsigned long p, long k) {
    Int mod = pow_int(Int(p), static_cast<unsigned long>(k));
    modpoly::Poly out;
    for (int i = 0; i <= f.formal_degree; ++i) {
        const PadicNumber& c = f.c[static_cast<std::size_t>(i)];
        if (c.is_exact_zero()) {
            out.push_back(0);
            continue;
        }
        if (c.valuation_bound() < 0) throw DomainError("hensel: coefficient is not a p-adic integer");
        if (c.abs_precision() < k)
            throw PrecisionError("hensel: coefficient known to lower precision than requested");
        if (c.is_inexact_zero()) {
            out.push_back(0);
            continue;
        }
        out.push_back(mod_positive(pow_int(Int(p), static_cast<unsigned long>(c.valuation())) *
                                       c.unit_digits(),
                                   mod));
    }
    modpoly::trim(out);
    return out;
}

inline UniPoly<PadicNumber> from_modpoly(const modpoly::Poly& f, unsigned long p, long k,
                                         int formal_degree) {
    std::vector<PadicNumber> cs;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0)
            cs.push_back(PadicNumber::inexact_zero(p, k));
        else {
            long v = valuation_int(f[i], Int(p));
            cs.push_back(PadicNumber::from_unit(p, v, f[i] / pow_int(Int(p), static_cast<unsigned long>(v)),
                                                k - v));
        }
    }
    if (cs.empty()) cs.push_back(PadicNumber::inexact_zero(p, k));
    return UniPoly<PadicNumber>(cs, formal_degree);
}

inline unsigned long prime_of(const UniPoly<PadicNumber>& f) {
    for (const auto& c : f.c)
        if (c.prime()) return c.prime();
    throw DomainError("polynomial carries no prime context");
}

/**
 * Lift a coprime factorization f = g0*h0 mod p to f = g*h mod p^N.
 * Seeds are given over the residue field; lc(f) must be a p-adic unit. The
 * lift runs on monic normalizations, one digit per step, and the leading
 * coefficient of f is re-distributed so that g = g0 and h = h0 mod p.
 */
inline std::pair<UniPoly<PadicNumber>, UniPoly<PadicNumber>> hensel_lift_factorization(
    const UniPoly<PadicNumber>& f, const std::vector<Int>& g0_, const std::vector<Int>& h0_,
    long N) {
    unsigned long p = prime_of(f);
    Int P(p);
    Int modN = pow_int(P, static_cast<unsigned long>(N));
    if (!f.leading().is_certified_nonzero() || f.leading().valuation() != 0)
        throw DomainError("hensel: leading coefficient must be a certified unit");

    modpoly::Poly g0 = g0_, h0 = h0_;
    for (auto& x : g0) x = mod_positive(x, P);
    for (auto& x : h0) x = mod_positive(x, P);
    modpoly::trim(g0);
    modpoly::trim(h0);
    if (g0.empty() || h0.empty()) throw DomainError("hensel: zero seed factor");
    modpoly::Poly fbar = to_modpoly(f, p, 1);
    if (modpoly::sub(fbar, modpoly::mul(g0, h0, P), P) != modpoly::Poly{})
        throw DomainError("hensel: f != g0*h0 mod p");

    // monic normalizations
    modpoly::Poly fN = to_modpoly(f, p, N);
    Int lcf = fN.back();
    modpoly::Poly fm = modpoly::scale(fN, mod_inverse(lcf, modN), modN);
    Int cg = g0.back(), ch = h0.back();
    modpoly::Poly gm = modpoly::scale(g0, mod_inverse(cg, P), P);
    modpoly::Poly hm = modpoly::scale(h0, mod_inverse(ch, P), P);
    auto [gcd, a, b] = modpoly::egcd(gm, hm, P);
    if (modpoly::deg(gcd) != 0) throw DomainError("hensel: seed factors are not coprime mod p");
    // a*gm + b*hm = 1 mod p

    const int dg = modpoly::deg(gm), dh = modpoly::deg(hm);
    modpoly::Poly g = gm, h = hm;
    for (long k = 1; k < N; ++k) {
        Int modk1 = pow_int(P, static_cast<unsigned long>(k + 1));
        Int pk = pow_int(P, static_cast<unsigned long>(k));
        modpoly::Poly diff = modpoly::sub(fm, modpoly::mul(g, h, modk1), modk1);
        modpoly::Poly d;
        for (auto& x : diff) d.push_back(mod_positive(x / pk, P));
        modpoly::trim(d);
        if (d.empty()) continue;
        // monic factors keep the defect degree < dg + dh, so the reduced Bezout
        // corrections solve dg_*hm + dh_*gm = d on the nose
        modpoly::Poly dgpoly = modpoly::divmod(modpoly::mul(b, d, P), gm, P).second;
        modpoly::Poly dhpoly = modpoly::divmod(modpoly::mul(a, d, P), hm, P).second;
        g = modpoly::add(g, modpoly::scale(dgpoly, pk, modk1), modk1);
        h = modpoly::add(h, modpoly::scale(dhpoly, pk, modk1), modk1);
    }
    // redistribute the unit leading coefficient: h gets the integer lift of lc(h0)
    modpoly::Poly hout = modpoly::scale(h, ch, modN);
    modpoly::Poly gout = modpoly::scale(g, mod_positive(lcf * mod_inverse(ch, modN), modN), modN);
    return {from_modpoly(gout, p, N, dg), from_modpoly(hout, p, N, dh)};
}

} // namespace padicreg
