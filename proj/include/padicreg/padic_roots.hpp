#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "hensel.hpp"
#include "newton_polygon.hpp"

namespace padicreg {

struct PadicRoot {
    std::variant<PadicNumber, QuadExtElement> value;
    int multiplicity = 1;
    bool certified_simple = true;

    bool in_qp() const { return std::holds_alternative<PadicNumber>(value); }
    const PadicNumber& qp() const { return std::get<PadicNumber>(value); }
    const QuadExtElement& ext() const { return std::get<QuadExtElement>(value); }
};

struct RootsResult {
    std::vector<PadicRoot> roots;
    int unsupported_degree = 0; // leftover factor needing a splitting field of degree > 2

    int total_multiplicity() const {
        int m = unsupported_degree;
        for (const auto& r : roots) m += r.multiplicity;
        return m;
    }
};

namespace detail {

inline long min_abs_precision(const UniPoly<PadicNumber>& f) {
    long m = std::numeric_limits<long>::max();
    for (const auto& c : f.c)
        if (!c.is_exact_zero()) m = std::min(m, c.abs_precision());
    return m == std::numeric_limits<long>::max() ? 0 : m;
}

// Newton iteration from a separated approximate root; stops when the correction
// valuation clears the working precision minus two guard digits.
inline std::optional<PadicNumber> newton_lift(const UniPoly<PadicNumber>& f, PadicNumber x,
                                              long target) {
    UniPoly<PadicNumber> fp = f.derivative();
    for (int it = 0; it < 96; ++it) {
        PadicNumber fx = f(x);
        if (!fx.is_certified_nonzero()) return x;
        PadicNumber dfx = fp(x);
        if (!dfx.is_certified_nonzero()) return std::nullopt;
        PadicNumber corr = fx / dfx;
        x = x - corr;
        if (corr.valuation() >= target) return x;
    }
    return std::nullopt;
}

inline Int eval_modp(const modpoly::Poly& h, const Int& r, const Int& p) {
    Int acc = 0;
    for (auto it = h.rbegin(); it != h.rend(); ++it) acc = mod_positive(acc * r + *it, p);
    return acc;
}

inline Int eval_deriv_modp(const modpoly::Poly& h, const Int& r, const Int& p) {
    Int acc = 0;
    for (long i = modpoly::deg(h); i >= 1; --i)
        acc = mod_positive(acc * r + h[static_cast<std::size_t>(i)] * i, p);
    return acc;
}

inline int residue_multiplicity(modpoly::Poly h, const Int& r, const Int& p) {
    int mult = 0;
    while (modpoly::deg(h) >= 1) {
        // synthetic division by (x - r) over F_p
        modpoly::Poly q(static_cast<std::size_t>(modpoly::deg(h)), 0);
        Int carry = 0;
        for (long i = modpoly::deg(h); i >= 1; --i) {
            carry = mod_positive(carry * r + h[static_cast<std::size_t>(i)], p);
            q[static_cast<std::size_t>(i - 1)] = carry;
        }
        Int rem = mod_positive(carry * r + h[0], p);
        if (rem != 0) break;
        ++mult;
        h = q;
        modpoly::trim(h);
    }
    return mult;
}

// coefficients of f(r + X) with X replaced by p*z, content-normalized
inline UniPoly<PadicNumber> taylor_shift_scale(const UniPoly<PadicNumber>& f, const Int& r,
                                               unsigned long p) {
    std::vector<PadicNumber> taylor;
    UniPoly<PadicNumber> cur = f;
    PadicNumber rp = r == 0 ? PadicNumber::exact_zero(p)
                            : PadicNumber::from_int(p, r, std::max<long>(1, min_abs_precision(f) + 4));
    while (true) {
        if (cur.degree() < 1) {
            taylor.push_back(cur.c[0]);
            break;
        }
        auto [q, rem] = cur.divide_linear(rp);
        taylor.push_back(rem);
        cur = q;
    }
    std::vector<PadicNumber> shifted;
    for (std::size_t i = 0; i < taylor.size(); ++i)
        shifted.push_back(taylor[i].shift(static_cast<long>(i)));
    long content = std::numeric_limits<long>::max();
    for (const auto& c : shifted)
        if (!c.is_exact_zero()) content = std::min(content, c.valuation_bound());
    if (content == std::numeric_limits<long>::max()) content = 0;
    for (auto& c : shifted) c = c.shift(-content);
    return UniPoly<PadicNumber>(shifted, static_cast<int>(shifted.size()) - 1);
}

struct IntegralRootFinder {
    const UniPoly<PadicNumber>& f;
    unsigned long p;
    long nwork;
    std::vector<PadicRoot> found;

    void report_cluster(const Int& center, long depth, int mult) {
        PadicNumber approx;
        if (center == 0)
            approx = PadicNumber::inexact_zero(p, depth);
        else {
            long v = valuation_int(center, Int(p));
            approx = PadicNumber::from_unit(p, v, center / pow_int(Int(p), static_cast<unsigned long>(v)),
                                            std::max<long>(1, depth - v));
        }
        found.push_back({approx, mult, false});
    }

    // roots of f lying in offset + p^depth * Z_p; h is f recentered there
    void cluster(const UniPoly<PadicNumber>& h, const Int& offset, long depth,
                 bool skip_zero_residue) {
        modpoly::Poly hbar = to_modpoly(h, p, 1);
        if (hbar.empty()) throw PrecisionError("root finding: polynomial vanishes mod p at working precision");
        for (Int r = skip_zero_residue ? 1 : 0; r < Int(p); ++r) {
            if (eval_modp(hbar, r, Int(p)) != 0) continue;
            Int center = offset + r * pow_int(Int(p), static_cast<unsigned long>(depth));
            int mult = residue_multiplicity(hbar, r, Int(p));
            if (eval_deriv_modp(hbar, r, Int(p)) != 0) {
                PadicNumber x0 = center == 0 ? PadicNumber::exact_zero(p)
                                             : PadicNumber::from_int(p, center, nwork);
                auto lifted = newton_lift(f, x0, nwork - 2);
                if (lifted) {
                    found.push_back({*lifted, 1, true});
                    continue;
                }
            }
            if (depth + 1 >= nwork - 2) {
                report_cluster(center, depth + 1, mult);
                continue;
            }
            UniPoly<PadicNumber> h2 = taylor_shift_scale(h, r, p);
            if (min_abs_precision(h2) < 1) {
                report_cluster(center, depth + 1, mult);
                continue;
            }
            cluster(h2, center, depth + 1, false);
        }
    }
};

// two roots of a*x^2 + b*x + c over Q_p or a quadratic extension
inline void solve_quadratic(const PadicNumber& a, const PadicNumber& b, const PadicNumber& c,
                            std::vector<PadicRoot>& out) {
    if (!a.is_certified_nonzero()) throw PrecisionError("quadratic leading coefficient not certified");
    unsigned long p = a.prime();
    PadicNumber four = PadicNumber::from_int(p, 4, a.rel_precision() + 4);
    PadicNumber two = PadicNumber::from_int(p, 2, a.rel_precision() + 4);
    PadicNumber disc = b * b - four * a * c;
    if (disc.is_exact_zero()) {
        out.push_back({-(b / (two * a)), 2, true});
        return;
    }
    if (disc.is_inexact_zero())
        throw PrecisionError("quadratic discriminant indistinguishable from zero");
    SqrtResult s = padic_sqrt(disc);
    if (s.in_qp) {
        out.push_back({(-b + *s.in_qp) / (two * a), 1, true});
        out.push_back({(-b - *s.in_qp) / (two * a), 1, true});
    } else {
        const QuadExtElement& rt = *s.in_quadext;
        QuadExtElement base = QuadExtElement::embed(-(b / (two * a)), rt.disc());
        QuadExtElement off(PadicNumber::exact_zero(p), rt.im() / (two * a), rt.disc());
        out.push_back({base + off, 1, true});
        out.push_back({base - off, 1, true});
    }
}

} // namespace detail

/**
 * All roots of f in Q_p and quadratic extensions, degree <= 4.
 *
 * Q_p roots come from residue enumeration plus Newton lifting of simple roots;
 * after deflation, quadratic cofactors go through the quadratic formula in
 * Q_p(sqrt d), even quartics through nested square roots, and mixed quartics
 * through a Hensel split into two quadratics. A leftover factor needing a
 * larger splitting field is reported in unsupported_degree; unresolved root
 * clusters at working precision are reported with certified_simple = false.
 */
inline RootsResult padic_roots(const UniPoly<PadicNumber>& f) {
    unsigned long p = prime_of(f);
    RootsResult res;
    int d = f.degree();
    if (d < 0) throw DomainError("padic_roots: zero polynomial");
    if (!f.leading().is_certified_nonzero())
        throw PrecisionError("padic_roots: leading coefficient not certified nonzero");
    if (d > 4) throw DomainError("padic_roots: degree > 4 not supported");

    // exact-zero low coefficients give certified roots at 0
    int zero_mult = 0;
    while (zero_mult < d && f.c[static_cast<std::size_t>(zero_mult)].is_exact_zero()) ++zero_mult;
    if (zero_mult > 0)
        res.roots.push_back({PadicNumber::exact_zero(p), zero_mult, zero_mult == 1});
    std::vector<PadicNumber> gc(f.c.begin() + zero_mult, f.c.begin() + d + 1);
    UniPoly<PadicNumber> g(gc, d - zero_mult);
    if (g.degree() == 0) return res;

    long nwork = detail::min_abs_precision(g);

    if (g.degree() == 1) {
        res.roots.push_back({-(g.c[0] / g.c[1]), 1, true});
        return res;
    }

    // integral-valuation segments of the Newton polygon
    NewtonPolygon np = newton_polygon(g);
    for (const auto& [lamr, len] : np.slopes) {
        if (boost::multiprecision::denominator(lamr) != 1) continue; // ramified; handled below
        long lam = static_cast<long>(boost::multiprecision::numerator(lamr));
        // substitute x = p^lam * y and normalize content
        std::vector<PadicNumber> hc;
        for (int i = 0; i <= g.degree(); ++i)
            hc.push_back(g.c[static_cast<std::size_t>(i)].shift(lam * i));
        long content = std::numeric_limits<long>::max();
        for (const auto& c : hc)
            if (!c.is_exact_zero()) content = std::min(content, c.valuation_bound());
        for (auto& c : hc) c = c.shift(-content);
        UniPoly<PadicNumber> h(hc, g.degree());
        detail::IntegralRootFinder sub{h, p, detail::min_abs_precision(h), {}};
        sub.cluster(h, 0, 0, true);
        for (auto& root : sub.found) {
            // map y back through x = p^lam * y and polish against g
            PadicNumber x = root.qp().shift(lam);
            if (root.certified_simple) {
                auto relift = detail::newton_lift(g, x, nwork - 2);
                if (relift) {
                    res.roots.push_back({*relift, 1, true});
                    continue;
                }
                root.certified_simple = false;
            }
            res.roots.push_back({x, root.multiplicity, false});
        }
    }

    // roots found so far, excluding the zero root already split off
    int m = 0;
    for (const auto& r : res.roots) m += r.multiplicity;
    m -= zero_mult;

    int rem = g.degree() - m;
    if (rem <= 0) return res;

    // deflate by the certified simple Q_p roots and handle the cofactor
    UniPoly<PadicNumber> cof = g;
    bool deflation_ok = true;
    for (const auto& r : res.roots) {
        if (!r.in_qp() || !r.certified_simple || r.qp().is_exact_zero()) continue;
        if (cof.degree() < 1) break;
        cof = cof.divide_linear(r.qp()).first;
        if (detail::min_abs_precision(cof) < 3) deflation_ok = false;
    }
    for (const auto& r : res.roots)
        if (!r.certified_simple) deflation_ok = false; // unresolved clusters block the cofactor
    if (!deflation_ok) {
        res.unsupported_degree = rem;
        return res;
    }

    if (cof.degree() == 1) {
        res.roots.push_back({-(cof.c[0] / cof.c[1]), 1, true});
        return res;
    }
    if (cof.degree() == 2) {
        detail::solve_quadratic(cof.c[2], cof.c[1], cof.c[0], res.roots);
        return res;
    }
    if (cof.degree() == 4) {
        bool even = cof.c[1].is_exact_zero() && cof.c[3].is_exact_zero();
        if (even) {
            // nested square roots: solve a*Y^2 + b*Y + c, then Y = x^2
            std::vector<PadicRoot> yroots;
            detail::solve_quadratic(cof.c[4], cof.c[2], cof.c[0], yroots);
            for (const auto& yr : yroots) {
                if (!yr.in_qp()) {
                    res.unsupported_degree += 2 * yr.multiplicity;
                    continue;
                }
                if (!yr.qp().is_certified_nonzero()) {
                    res.unsupported_degree += 2 * yr.multiplicity;
                    continue;
                }
                SqrtResult s = padic_sqrt(yr.qp());
                if (s.in_qp) {
                    res.roots.push_back({*s.in_qp, yr.multiplicity, yr.multiplicity == 1});
                    res.roots.push_back({-*s.in_qp, yr.multiplicity, yr.multiplicity == 1});
                } else {
                    res.roots.push_back({*s.in_quadext, yr.multiplicity, yr.multiplicity == 1});
                    res.roots.push_back({-*s.in_quadext, yr.multiplicity, yr.multiplicity == 1});
                }
            }
            return res;
        }
        // try a coprime quadratic x quadratic split mod p
        modpoly::Poly fbar;
        try {
            fbar = to_modpoly(cof, p, 1);
        } catch (const Error&) {
            res.unsupported_degree = 4;
            return res;
        }
        if (modpoly::deg(fbar) == 4) {
            Int P(p);
            Int lcinv = mod_inverse(fbar.back(), P);
            modpoly::Poly fm = modpoly::scale(fbar, lcinv, P);
            for (Int b0 = 0; b0 < P; ++b0)
                for (Int c0 = 0; c0 < P; ++c0) {
                    modpoly::Poly q{c0, b0, Int(1)};
                    auto [quo, rem2] = modpoly::divmod(fm, q, P);
                    if (!rem2.empty()) continue;
                    auto [gcd, u, v] = modpoly::egcd(q, quo, P);
                    if (modpoly::deg(gcd) != 0) continue;
                    long nlift = detail::min_abs_precision(cof);
                    auto [gl, hl] = hensel_lift_factorization(cof, q, quo, nlift);
                    detail::solve_quadratic(gl.c[2], gl.c[1], gl.c[0], res.roots);
                    detail::solve_quadratic(hl.c[2], hl.c[1], hl.c[0], res.roots);
                    return res;
                }
        }
        res.unsupported_degree = 4;
        return res;
    }
    res.unsupported_degree = cof.degree();
    return res;
}

} // namespace padicreg
