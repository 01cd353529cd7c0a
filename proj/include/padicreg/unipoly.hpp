#pragma once

#include <vector>

#include "ring_traits.hpp"

namespace padicreg {

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Determinant by dynamic programming over column subsets; needs only + and *.
// Exact-zero entries are skipped, which also keeps p-adic precision tracking clean.
template <class R>
R det_dp(const std::vector<std::vector<R>>& m) {
    const std::size_t n = m.size();
    if (n == 0) throw DomainError("determinant of empty matrix");
    for (const auto& row : m)
        if (row.size() != n) throw DomainError("determinant of non-square matrix");
    if (n > 16) throw DomainError("det_dp: matrix too large");
    const R zero = RingTraits<R>::zero(m[0][0]);
    std::vector<R> dp(std::size_t(1) << n, zero);
    std::vector<char> seen(std::size_t(1) << n, 0);
    dp[0] = zero;
    seen[0] = 1;
    // dp[mask] with |mask| = k is the signed minor of rows 0..k-1 against columns in mask
    std::vector<std::size_t> cur{0};
    std::vector<R> curval;
    curval.push_back(zero); // det of the empty matrix is 1; handled by the k = 0 expansion below
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<std::size_t> nxt;
        std::vector<R> nxtval;
        std::vector<long> index(std::size_t(1) << n, -1);
        for (std::size_t t = 0; t < cur.size(); ++t) {
            std::size_t mask = cur[t];
            for (std::size_t j = 0; j < n; ++j) {
                if (mask & (std::size_t(1) << j)) continue;
                if (RingTraits<R>::is_exact_zero(m[k][j])) continue;
                int sign = 1;
                for (std::size_t b = j + 1; b < n; ++b)
                    if (mask & (std::size_t(1) << b)) sign = -sign;
                R contrib = k == 0 ? m[k][j] : curval[t] * m[k][j];
                if (sign < 0) contrib = -contrib;
                std::size_t nm = mask | (std::size_t(1) << j);
                if (index[nm] < 0) {
                    index[nm] = static_cast<long>(nxt.size());
                    nxt.push_back(nm);
                    nxtval.push_back(contrib);
                } else {
                    nxtval[static_cast<std::size_t>(index[nm])] =
                        nxtval[static_cast<std::size_t>(index[nm])] + contrib;
                }
            }
        }
        cur = std::move(nxt);
        curval = std::move(nxtval);
        if (cur.empty()) return zero; // a row of exact zeros
    }
    return curval.at(0);
}

/**
 * Univariate polynomial over a pluggable coefficient ring, lowest degree first.
 * formal_degree controls the Sylvester-matrix size and may exceed the actual
 * degree; coefficients are stored padded to formal_degree + 1.
 */
template <class R>
struct UniPoly {
    std::vector<R> c;
    int formal_degree = 0;

    UniPoly(std::vector<R> coeffs, int formal)
        : c(std::move(coeffs)), formal_degree(formal) {
        if (c.empty()) throw DomainError("UniPoly needs at least one coefficient for ring context");
        for (std::size_t i = static_cast<std::size_t>(formal_degree) + 1; i < c.size(); ++i)
            if (!RingTraits<R>::is_exact_zero(c[i]))
                throw DomainError("coefficient above the formal degree");
        c.resize(static_cast<std::size_t>(formal_degree) + 1, RingTraits<R>::zero(c[0]));
    }

    explicit UniPoly(std::vector<R> coeffs)
        : UniPoly(coeffs, coeffs.empty() ? 0 : static_cast<int>(coeffs.size()) - 1) {}

    // last index with a non-exact-zero coefficient; -1 for the zero polynomial
    int degree() const {
        for (int i = formal_degree; i >= 0; --i)
            if (!RingTraits<R>::is_exact_zero(c[static_cast<std::size_t>(i)])) return i;
        return -1;
    }
    bool is_zero() const { return degree() < 0; }
    const R& leading() const {
        int d = degree();
        if (d < 0) throw DomainError("leading coefficient of zero polynomial");
        return c[static_cast<std::size_t>(d)];
    }
    R zero() const { return RingTraits<R>::zero(c[0]); }

    // Horner evaluation into any ring S via a coefficient embedding conv : R -> S
    template <class S, class F>
    S eval_conv(const S& x, F conv) const {
        int d = degree();
        if (d < 0) return x - x; // additive zero in the evaluation ring
        S acc = conv(c[static_cast<std::size_t>(d)]);
        for (int i = d - 1; i >= 0; --i) acc = acc * x + conv(c[static_cast<std::size_t>(i)]);
        return acc;
    }
    R operator()(const R& x) const {
        return eval_conv<R>(x, [](const R& v) { return v; });
    }

    UniPoly derivative() const {
        std::vector<R> d;
        for (std::size_t i = 1; i < c.size(); ++i) {
            R term = c[i];
            for (std::size_t k = 1; k < i; ++k) term = term + c[i];
            d.push_back(term);
        }
        if (d.empty()) d.push_back(zero());
        return UniPoly(d, std::max(0, formal_degree - 1));
    }

    // quotient and remainder of division by (x - r)
    std::pair<UniPoly, R> divide_linear(const R& r) const {
        int d = degree();
        if (d < 1) throw DomainError("divide_linear needs degree >= 1");
        std::vector<R> q(static_cast<std::size_t>(d), zero());
        R carry = c[static_cast<std::size_t>(d)];
        for (int i = d - 1; i >= 0; --i) {
            q[static_cast<std::size_t>(i)] = carry;
            carry = c[static_cast<std::size_t>(i)] + r * carry;
        }
        return {UniPoly(q, d - 1), carry};
    }

    friend UniPoly operator*(const UniPoly& f, const UniPoly& g) {
        std::vector<R> out(f.c.size() + g.c.size() - 1, f.zero());
        for (std::size_t i = 0; i < f.c.size(); ++i) {
            if (RingTraits<R>::is_exact_zero(f.c[i])) continue;
            for (std::size_t j = 0; j < g.c.size(); ++j)
                out[i + j] = out[i + j] + f.c[i] * g.c[j];
        }
        return UniPoly(out, f.formal_degree + g.formal_degree);
    }
    friend UniPoly operator+(const UniPoly& f, const UniPoly& g) {
        std::vector<R> out(std::max(f.c.size(), g.c.size()), f.zero());
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (i < f.c.size()) out[i] = out[i] + f.c[i];
            if (i < g.c.size()) out[i] = out[i] + g.c[i];
        }
        return UniPoly(out, std::max(f.formal_degree, g.formal_degree));
    }
    friend UniPoly operator-(const UniPoly& f, const UniPoly& g) {
        UniPoly ng = g;
        for (auto& x : ng.c) x = -x;
        return f + ng;
    }
};

// Determinant of the Sylvester matrix built at the formal degrees, so that
// res(f, g) = lc(f)^{deg g} * prod_{f(a)=0} g(a) at matching actual degrees.
template <class R>
R resultant(const UniPoly<R>& f, const UniPoly<R>& g) {
    if (f.is_zero() && g.is_zero()) throw DomainError("resultant of two zero polynomials");
    const int m = f.formal_degree, n = g.formal_degree;
    if (m == 0 && n == 0) throw DomainError("resultant needs a positive formal degree");
    const std::size_t size = static_cast<std::size_t>(m + n);
    const R zero = f.zero();
    std::vector<std::vector<R>> syl(size, std::vector<R>(size, zero));
    for (int row = 0; row < n; ++row)
        for (int k = 0; k <= m; ++k)
            syl[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + k)] =
                f.c[static_cast<std::size_t>(m - k)];
    for (int row = 0; row < m; ++row)
        for (int k = 0; k <= n; ++k)
            syl[static_cast<std::size_t>(n + row)][static_cast<std::size_t>(row + k)] =
                g.c[static_cast<std::size_t>(n - k)];
    return det_dp(syl);
}

// (-1)^{d(d-1)/2} res(f, f') / lc(f) at the actual degree d of f.
template <class R>
R discriminant(const UniPoly<R>& f) {
    int d = f.degree();
    if (d < 2) throw DomainError("discriminant needs degree >= 2");
    UniPoly<R> fd(std::vector<R>(f.c.begin(), f.c.begin() + d + 1), d);
    UniPoly<R> fp = fd.derivative();
    R res = resultant(fd, UniPoly<R>(fp.c, d - 1));
    R out = RingTraits<R>::divide_exact(res, fd.leading());
    if ((static_cast<long>(d) * (d - 1) / 2) % 2 != 0) out = -out;
    return out;
}

} // namespace padicreg
