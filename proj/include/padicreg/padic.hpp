#pragma once

#include <algorithm>
#include <cassert>
#include <sstream>
#include <string>
#include <vector>

#include "rational.hpp"

namespace padicreg {

/**
 * Element of Q_p at capped relative precision.
 *
 * A regular value is p^v * u + O(p^{v+N}) with u a unit mod p^N.
 * Exact zero is distinguished from an inexact zero O(p^M) whose known
 * digits all vanish; rank and condition checks rely on that distinction.
 *
 * Precision propagation: mul/div carry min(N_x, N_y); addition carries
 * absolute precision min(v_x+N_x, v_y+N_y), so cancellation loses digits.
 * Values are immutable; all operations are pure.
 */
class PadicNumber {
public:
    enum class Kind { ExactZero, InexactZero, Regular };

    PadicNumber() : prime_(0), kind_(Kind::ExactZero), val_(0), prec_(0) {}

    static PadicNumber exact_zero(unsigned long p) {
        PadicNumber x;
        x.prime_ = p;
        x.kind_ = Kind::ExactZero;
        return x;
    }

    // O(p^abs_prec): nothing known except valuation >= abs_prec
    static PadicNumber inexact_zero(unsigned long p, long abs_prec) {
        PadicNumber x;
        x.prime_ = p;
        x.kind_ = Kind::InexactZero;
        x.val_ = abs_prec;
        return x;
    }

    static PadicNumber from_unit(unsigned long p, long v, const Int& unit, long N) {
        if (N < 1) throw PrecisionError("relative precision must be >= 1");
        Int pn = pow_int(Int(p), static_cast<unsigned long>(N));
        Int u = mod_positive(unit, pn);
        if (u % p == 0) throw DomainError("unit part is divisible by p");
        PadicNumber x;
        x.prime_ = p;
        x.kind_ = Kind::Regular;
        x.val_ = v;
        x.unit_ = u;
        x.prec_ = N;
        return x;
    }

    static PadicNumber from_int(unsigned long p, const Int& n, long N) {
        if (n == 0) return exact_zero(p);
        long v = valuation_int(n, Int(p));
        return from_unit(p, v, n / pow_int(Int(p), static_cast<unsigned long>(v)), N);
    }

    static PadicNumber from_rational(unsigned long p, const Rational& r, long N) {
        if (r == 0) return exact_zero(p);
        Int num = boost::multiprecision::numerator(r);
        Int den = boost::multiprecision::denominator(r);
        long vn = valuation_int(num, Int(p));
        long vd = valuation_int(den, Int(p));
        Int pn = pow_int(Int(p), static_cast<unsigned long>(N));
        Int nu = mod_positive(num / pow_int(Int(p), static_cast<unsigned long>(vn)), pn);
        Int du = mod_positive(den / pow_int(Int(p), static_cast<unsigned long>(vd)), pn);
        return from_unit(p, vn - vd, nu * mod_inverse(du, pn), N);
    }

    unsigned long prime() const { return prime_; }
    Kind kind() const { return kind_; }
    bool is_exact_zero() const { return kind_ == Kind::ExactZero; }
    bool is_inexact_zero() const { return kind_ == Kind::InexactZero; }
    bool is_certified_nonzero() const { return kind_ == Kind::Regular; }

    long valuation() const {
        if (kind_ != Kind::Regular) throw DomainError("valuation of a zero value");
        return val_;
    }
    // lower bound on the valuation, valid for all kinds except exact zero
    long valuation_bound() const {
        if (kind_ == Kind::ExactZero) throw DomainError("valuation bound of exact zero");
        return val_;
    }
    long rel_precision() const {
        if (kind_ != Kind::Regular) throw DomainError("relative precision of a zero value");
        return prec_;
    }
    // value is known modulo p^abs_precision
    long abs_precision() const {
        if (kind_ == Kind::ExactZero) throw DomainError("absolute precision of exact zero");
        return kind_ == Kind::Regular ? val_ + prec_ : val_;
    }
    const Int& unit_digits() const {
        if (kind_ != Kind::Regular) throw DomainError("unit digits of a zero value");
        return unit_;
    }
    // integer representative of p^{-v} x mod p^N
    Int residue_mod(long k) const {
        if (kind_ != Kind::Regular) return 0;
        return unit_ % pow_int(Int(prime_), static_cast<unsigned long>(std::min(k, prec_)));
    }

    PadicNumber operator-() const {
        if (kind_ != Kind::Regular) return *this;
        Int pn = pow_int(Int(prime_), static_cast<unsigned long>(prec_));
        return from_unit(prime_, val_, pn - unit_, prec_);
    }

    // multiply by p^e (exact)
    PadicNumber shift(long e) const {
        PadicNumber x = *this;
        if (kind_ != Kind::ExactZero) x.val_ += e;
        return x;
    }

    PadicNumber with_rel_precision(long N) const {
        if (kind_ != Kind::Regular) return *this;
        if (N >= prec_) return *this;
        return from_unit(prime_, val_, unit_, N);
    }

    friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
        a.check_compat(b);
        if (a.is_exact_zero()) return b;
        if (b.is_exact_zero()) return a;
        long abs = std::min(a.abs_precision(), b.abs_precision());
        long m = std::min(a.val_, b.val_);
        if (abs <= m) return inexact_zero(a.prime_, abs);
        Int mod = pow_int(Int(a.prime_), static_cast<unsigned long>(abs - m));
        Int s = mod_positive(a.lift_from(m, mod) + b.lift_from(m, mod), mod);
        if (s == 0) return inexact_zero(a.prime_, abs);
        long w = valuation_int(s, Int(a.prime_));
        return from_unit(a.prime_, m + w, s / pow_int(Int(a.prime_), static_cast<unsigned long>(w)),
                         abs - m - w);
    }

    friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

    friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
        a.check_compat(b);
        if (a.is_exact_zero() || b.is_exact_zero()) return exact_zero(a.prime_ ? a.prime_ : b.prime_);
        if (a.is_inexact_zero() || b.is_inexact_zero())
            return inexact_zero(a.prime_, a.val_ + b.val_); // O(p^{M}): bounds add
        long N = std::min(a.prec_, b.prec_);
        Int pn = pow_int(Int(a.prime_), static_cast<unsigned long>(N));
        return from_unit(a.prime_, a.val_ + b.val_, a.unit_ * b.unit_ % pn, N);
    }

    PadicNumber inverse() const {
        if (kind_ != Kind::Regular) throw DomainError("inverse of a value not certified nonzero");
        Int pn = pow_int(Int(prime_), static_cast<unsigned long>(prec_));
        return from_unit(prime_, -val_, mod_inverse(unit_, pn), prec_);
    }

    friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) { return a * b.inverse(); }

    // identical stored representation
    friend bool operator==(const PadicNumber& a, const PadicNumber& b) {
        if (a.prime_ != b.prime_ || a.kind_ != b.kind_) return false;
        switch (a.kind_) {
            case Kind::ExactZero: return true;
            case Kind::InexactZero: return a.val_ == b.val_;
            case Kind::Regular: return a.val_ == b.val_ && a.prec_ == b.prec_ && a.unit_ == b.unit_;
        }
        return false;
    }
    friend bool operator!=(const PadicNumber& a, const PadicNumber& b) { return !(a == b); }

    // no contradiction between the known digits of a and b
    bool matches(const PadicNumber& b) const { return !(*this - b).is_certified_nonzero(); }

    // v(a - b) >= M, certified
    bool agrees_to_abs(const PadicNumber& b, long M) const {
        PadicNumber d = *this - b;
        if (d.is_exact_zero()) return true;
        return d.valuation_bound() >= M;
    }

    std::string to_string() const {
        std::ostringstream os;
        switch (kind_) {
            case Kind::ExactZero: os << "0"; break;
            case Kind::InexactZero: os << "O(" << prime_ << "^" << val_ << ")"; break;
            case Kind::Regular: {
                os << "p" << prime_;
                if (val_ != 0) os << "^" << val_;
                os << ":";
                Int u = unit_;
                for (long i = 0; i < prec_; ++i) {
                    if (i) os << ",";
                    os << u % prime_;
                    u /= prime_;
                }
                break;
            }
        }
        return os.str();
    }

private:
    void check_compat(const PadicNumber& b) const {
        if (prime_ && b.prime_ && prime_ != b.prime_)
            throw DomainError("mixed primes in p-adic arithmetic");
    }
    // representative of p^{-m} * this modulo given modulus
    Int lift_from(long m, const Int& mod) const {
        if (kind_ != Kind::Regular) return 0;
        assert(val_ >= m);
        return pow_int(Int(prime_), static_cast<unsigned long>(val_ - m)) * unit_ % mod;
    }

    unsigned long prime_;
    Kind kind_;
    long val_;  // Regular: valuation; InexactZero: absolute precision cap
    Int unit_;  // Regular: unit part in [1, p^N), not divisible by p
    long prec_; // Regular: relative precision N
};

} // namespace padicreg
