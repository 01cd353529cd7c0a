#pragma once

#include <optional>
#include <utility>

#include "padic.hpp"

namespace padicreg {

// The unique (p-1)-st root of unity congruent to r mod p, to relative precision N.
// Computed as the limit of r^(p^k), which stabilizes mod p^{k+1}.
inline PadicNumber teichmuller(unsigned long p, const Int& r, long N) {
    if (p < 3) throw DomainError("p = 2 is not supported by the numeric kernel");
    Int pn = pow_int(Int(p), static_cast<unsigned long>(N));
    Int x = mod_positive(r, pn);
    if (x % p == 0) throw DomainError("teichmuller: residue divisible by p");
    for (long i = 0; i + 1 < N; ++i)
        x = boost::multiprecision::powm(x, Int(p), pn);
    return PadicNumber::from_unit(p, 0, x, N);
}

inline PadicNumber teichmuller_of(const PadicNumber& u) {
    if (!u.is_certified_nonzero()) throw DomainError("teichmuller of a value not certified nonzero");
    return teichmuller(u.prime(), u.unit_digits() % u.prime(), u.rel_precision());
}

// Iwasawa branch: log_p(p) = 0, so p^v is stripped and the Teichmuller part
// contributes nothing. Returns log of the principal-unit part via the
// alternating series; the reported precision follows from the propagation rules.
inline PadicNumber log_p(const PadicNumber& u) {
    if (u.is_exact_zero()) throw DomainError("log of exact zero");
    if (u.is_inexact_zero()) throw PrecisionError("log of a value with no known digits");
    unsigned long p = u.prime();
    if (p < 3) throw DomainError("p = 2 is not supported by the numeric kernel");
    long N = u.rel_precision();
    PadicNumber unit = PadicNumber::from_unit(p, 0, u.unit_digits(), N);
    PadicNumber principal = unit / teichmuller_of(unit);
    PadicNumber one = PadicNumber::from_int(p, 1, N);
    PadicNumber z = principal - one;
    // torsion to full working precision: the Iwasawa branch kills it
    if (!z.is_certified_nonzero()) return PadicNumber::exact_zero(p);
    long m = z.valuation();
    long target = z.abs_precision();
    PadicNumber sum = PadicNumber::exact_zero(p);
    PadicNumber zk = z;
    for (long k = 1;; ++k) {
        long e = 0;
        Int kp = k;
        while (kp % p == 0) {
            kp /= p;
            ++e;
        }
        PadicNumber term = zk * PadicNumber::from_int(p, kp, N + e + 2).inverse();
        term = term.shift(-e);
        if (k % 2 == 0) term = -term;
        sum = sum + term;
        // terms j > k have valuation >= j*m - v_p(j) >= j*m - digits_p(j), increasing in j
        long digits = 0;
        for (long t = k + 1; t > 0; t /= static_cast<long>(p)) ++digits;
        if ((k + 1) * m - digits >= target) break;
        zk = zk * z;
    }
    return sum;
}

// exp via the series; requires v(x) >= 1 for odd p.
inline PadicNumber exp_p(const PadicNumber& x) {
    if (x.is_exact_zero()) throw DomainError("exp of exact zero has no preferred precision; use 1");
    if (x.is_inexact_zero()) throw PrecisionError("exp of a value with no known digits");
    unsigned long p = x.prime();
    if (p < 3) throw DomainError("p = 2 is not supported by the numeric kernel");
    long m = x.valuation();
    if (m < 1) throw DomainError("exp requires valuation >= 1");
    long target = x.abs_precision();
    long N = x.rel_precision();
    PadicNumber sum = PadicNumber::from_int(p, 1, target);
    PadicNumber term = sum;
    long efact = 0; // v_p(k!)
    for (long k = 1;; ++k) {
        long e = 0;
        Int kp = k;
        while (kp % p == 0) {
            kp /= p;
            ++e;
        }
        efact += e;
        term = term * x * PadicNumber::from_int(p, kp, N + efact + 2).inverse();
        term = term.shift(-e);
        sum = sum + term;
        // v_p(j!) <= (j-1)/(p-1) <= (j-1)/2, so term valuations grow at least like j(m - 1/2)
        if ((k + 1) * m * 2 - k >= 2 * target) break;
    }
    return sum;
}

// log_p(u) / log_p(1 + p^nu): the lambda-coordinate of Section "cohomology of Q_p".
inline PadicNumber normalized_log(const PadicNumber& u, long nu) {
    if (u.is_exact_zero()) throw DomainError("normalized_log of exact zero");
    if (u.is_inexact_zero()) throw PrecisionError("normalized_log of a value with no known digits");
    if (u.valuation() != 0) throw DomainError("normalized_log requires a unit");
    unsigned long p = u.prime();
    long N = u.rel_precision();
    PadicNumber base = PadicNumber::from_int(p, 1 + pow_int(Int(p), static_cast<unsigned long>(nu)),
                                             N + nu + 2);
    PadicNumber lb = log_p(base);
    PadicNumber lu = log_p(u);
    if (lu.is_exact_zero()) return lu;
    if (lu.is_inexact_zero()) return PadicNumber::inexact_zero(p, lu.valuation_bound() - lb.valuation());
    return lu / lb;
}

/**
 * Element a + b*sqrt(d) of a quadratic extension of Q_p.
 * d is certified non-square at construction; multiplication is componentwise
 * with (a+b sqrt d)(a'+b' sqrt d) = (aa'+bb'd) + (ab'+a'b) sqrt d.
 */
class QuadExtElement {
public:
    QuadExtElement(PadicNumber a, PadicNumber b, PadicNumber d)
        : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}

    static QuadExtElement embed(const PadicNumber& a, const PadicNumber& d) {
        return QuadExtElement(a, PadicNumber::exact_zero(a.prime() ? a.prime() : d.prime()), d);
    }

    const PadicNumber& re() const { return a_; }
    const PadicNumber& im() const { return b_; }
    const PadicNumber& disc() const { return d_; }
    unsigned long prime() const { return d_.prime(); }

    bool is_exact_zero() const { return a_.is_exact_zero() && b_.is_exact_zero(); }
    bool is_certified_nonzero() const { return a_.is_certified_nonzero() || b_.is_certified_nonzero(); }
    bool is_rational() const { return b_.is_exact_zero(); }

    // twice the valuation (the extension may be ramified)
    long val2() const {
        if (is_exact_zero()) throw DomainError("valuation of exact zero");
        long best = std::numeric_limits<long>::max();
        if (!a_.is_exact_zero()) best = std::min(best, 2 * a_.valuation_bound());
        if (!b_.is_exact_zero()) best = std::min(best, 2 * b_.valuation_bound() + d_.valuation());
        return best;
    }

    QuadExtElement operator-() const { return QuadExtElement(-a_, -b_, d_); }
    QuadExtElement conj() const { return QuadExtElement(a_, -b_, d_); }
    PadicNumber norm() const { return a_ * a_ - d_ * b_ * b_; }

    friend QuadExtElement operator+(const QuadExtElement& x, const QuadExtElement& y) {
        return QuadExtElement(x.a_ + y.a_, x.b_ + y.b_, x.d_);
    }
    friend QuadExtElement operator-(const QuadExtElement& x, const QuadExtElement& y) {
        return QuadExtElement(x.a_ - y.a_, x.b_ - y.b_, x.d_);
    }
    friend QuadExtElement operator*(const QuadExtElement& x, const QuadExtElement& y) {
        return QuadExtElement(x.a_ * y.a_ + x.d_ * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.d_);
    }
    QuadExtElement inverse() const {
        PadicNumber n = norm();
        if (!n.is_certified_nonzero())
            throw PrecisionError("inverse of a quadratic-extension value not certified nonzero");
        PadicNumber ni = n.inverse();
        return QuadExtElement(a_ * ni, -(b_ * ni), d_);
    }
    friend QuadExtElement operator/(const QuadExtElement& x, const QuadExtElement& y) {
        return x * y.inverse();
    }
    friend bool operator==(const QuadExtElement& x, const QuadExtElement& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
    }

    bool matches(const QuadExtElement& y) const { return a_.matches(y.a_) && b_.matches(y.b_); }

    std::string to_string() const {
        if (is_rational()) return a_.to_string();
        return a_.to_string() + " + (" + b_.to_string() + ")*sqrt(" + d_.to_string() + ")";
    }

private:
    PadicNumber a_, b_, d_;
};

inline bool is_quadratic_residue(unsigned long p, const Int& r) {
    Int rr = mod_positive(r, Int(p));
    if (rr == 0) throw DomainError("residue divisible by p");
    return boost::multiprecision::powm(rr, Int((p - 1) / 2), Int(p)) == 1;
}

inline Int smallest_nonresidue(unsigned long p) {
    for (Int c = 2; c < Int(p); ++c)
        if (!is_quadratic_residue(p, c)) return c;
    throw DomainError("no quadratic nonresidue found (p = 2?)");
}

// Square root of a unit with QR residue, lifted by Newton from the residue root
// in {1, ..., (p-1)/2}.
inline PadicNumber sqrt_unit(const PadicNumber& u) {
    unsigned long p = u.prime();
    long N = u.rel_precision();
    Int pn = pow_int(Int(p), static_cast<unsigned long>(N));
    Int r0 = u.unit_digits() % p;
    Int x = 0;
    for (Int c = 1; c <= Int((p - 1) / 2); ++c)
        if (c * c % p == r0) {
            x = c;
            break;
        }
    if (x == 0) throw DomainError("sqrt_unit: residue is not a quadratic residue");
    Int a = u.unit_digits();
    for (long k = 1; k < N; k *= 2) {
        Int mod = pow_int(Int(p), static_cast<unsigned long>(std::min(2 * k, N)));
        x = mod_positive((x + a % mod * mod_inverse(x, mod)) * mod_inverse(Int(2), mod), mod);
    }
    return PadicNumber::from_unit(p, u.valuation() / 2, x, N);
}

struct SqrtResult {
    std::optional<PadicNumber> in_qp;         // set when u is a square in Q_p
    std::optional<QuadExtElement> in_quadext; // set otherwise: sqrt(u) = b*sqrt(d)
};

// Square root in Q_p when the valuation is even and the unit residue is a QR;
// otherwise an element b*sqrt(d) of the tagged quadratic extension, d in
// {nonresidue unit c, p, p*c}.
inline SqrtResult padic_sqrt(const PadicNumber& u) {
    if (u.is_exact_zero()) throw DomainError("sqrt of exact zero");
    if (u.is_inexact_zero())
        throw PrecisionError("sqrt: insufficient precision to decide quadratic residuosity");
    unsigned long p = u.prime();
    if (p < 3) throw DomainError("p = 2 is not supported by sqrt");
    long v = u.valuation();
    bool qr = is_quadratic_residue(p, u.unit_digits());
    SqrtResult res;
    if (v % 2 == 0 && qr) {
        res.in_qp = sqrt_unit(u);
        return res;
    }
    long N = u.rel_precision();
    Int c = smallest_nonresidue(p);
    PadicNumber d = v % 2 == 0 ? PadicNumber::from_int(p, c, N)
                               : (qr ? PadicNumber::from_int(p, p, N)
                                     : PadicNumber::from_int(p, Int(p) * c, N));
    PadicNumber w = u / d; // even valuation, QR unit by construction
    res.in_quadext = QuadExtElement(PadicNumber::exact_zero(p), sqrt_unit(w), d);
    return res;
}

} // namespace padicreg
