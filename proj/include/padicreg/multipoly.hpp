#pragma once

#include <array>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "unipoly.hpp"

namespace padicreg {

// Fixed ring context: the formal variables of the regulator identities.
// s0..s3 are the slope variables s, s', s'', s'''.
enum class Var : int {
    L1, L2, L3,
    M11, M12, M13,
    M21, M22, M23,
    M31, M32, M33,
    S,
    s0, s1, s2, s3,
};

constexpr int kNumVars = 17;

inline const char* var_name(Var v) {
    static const char* names[kNumVars] = {"L1",  "L2",  "L3",  "M11", "M12", "M13",
                                          "M21", "M22", "M23", "M31", "M32", "M33",
                                          "S",   "s",   "s'",  "s''", "s'''"};
    return names[static_cast<int>(v)];
}

/**
 * Exact-rational sparse multivariate polynomial over the fixed variable set.
 * Terms map exponent vectors to nonzero rational coefficients; arithmetic is
 * exact and all values are immutable.
 */
class MultiPoly {
public:
    using Expo = std::array<unsigned char, kNumVars>;
    using TermMap = std::map<Expo, Rational>;

    MultiPoly() = default;

    static MultiPoly constant(const Rational& c) {
        MultiPoly f;
        if (c != 0) f.terms_[Expo{}] = c;
        return f;
    }
    static MultiPoly variable(Var v) {
        MultiPoly f;
        Expo e{};
        e[static_cast<std::size_t>(v)] = 1;
        f.terms_[e] = 1;
        return f;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Expo{});
    }
    bool is_monomial() const { return terms_.size() == 1; }
    std::size_t term_count() const { return terms_.size(); }

    Rational constant_term() const {
        auto it = terms_.find(Expo{});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    int degree_in(Var v) const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[static_cast<std::size_t>(v)]));
        return d;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Expo e;
                for (int i = 0; i < kNumVars; ++i) {
                    int s = ea[static_cast<std::size_t>(i)] + eb[static_cast<std::size_t>(i)];
                    if (s > 255) throw DomainError("MultiPoly exponent overflow");
                    e[static_cast<std::size_t>(i)] = static_cast<unsigned char>(s);
                }
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend MultiPoly operator*(const Rational& c, const MultiPoly& a) {
        return MultiPoly::constant(c) * a;
    }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    // coefficient of v^k, a polynomial in the remaining variables
    MultiPoly coeff_of(Var v, int k) const {
        MultiPoly r;
        for (const auto& [e, c] : terms_)
            if (e[static_cast<std::size_t>(v)] == k) {
                Expo e2 = e;
                e2[static_cast<std::size_t>(v)] = 0;
                r.add_term(e2, c);
            }
        return r;
    }

    MultiPoly derivative(Var v) const {
        MultiPoly r;
        for (const auto& [e, c] : terms_) {
            int k = e[static_cast<std::size_t>(v)];
            if (k == 0) continue;
            Expo e2 = e;
            e2[static_cast<std::size_t>(v)] = static_cast<unsigned char>(k - 1);
            r.add_term(e2, c * k);
        }
        return r;
    }

    MultiPoly substitute(Var v, const MultiPoly& g) const {
        MultiPoly r;
        for (const auto& [e, c] : terms_) {
            Expo e2 = e;
            int k = e2[static_cast<std::size_t>(v)];
            e2[static_cast<std::size_t>(v)] = 0;
            MultiPoly t;
            t.add_term(e2, c);
            for (int i = 0; i < k; ++i) t = t * g;
            r = r + t;
        }
        return r;
    }

    // full scalar evaluation; conv embeds rational coefficients into S
    template <class S, class F>
    S evaluate(const std::array<S, kNumVars>& vals, F conv, const S& zero) const {
        S acc = zero;
        for (const auto& [e, c] : terms_) {
            S t = conv(c);
            for (int i = 0; i < kNumVars; ++i)
                for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) t = t * vals[static_cast<std::size_t>(i)];
            acc = acc + t;
        }
        return acc;
    }

    Rational evaluate_rational(const std::array<Rational, kNumVars>& vals) const {
        return evaluate<Rational>(vals, [](const Rational& c) { return c; }, Rational(0));
    }

    // view as a univariate polynomial in v with MultiPoly coefficients
    UniPoly<MultiPoly> as_unipoly(Var v, int formal_degree = -1) const {
        int d = degree_in(v);
        if (formal_degree < 0) formal_degree = d;
        if (formal_degree < d) throw DomainError("formal degree below actual degree");
        std::vector<MultiPoly> cs;
        for (int k = 0; k <= d; ++k) cs.push_back(coeff_of(v, k));
        if (cs.empty()) cs.push_back(MultiPoly());
        return UniPoly<MultiPoly>(cs, formal_degree);
    }

    // exact division: returns f/g if g divides f in the polynomial ring
    static bool try_divide_exact(const MultiPoly& f, const MultiPoly& g, MultiPoly& out) {
        if (g.is_zero()) throw DomainError("division by zero polynomial");
        MultiPoly rem = f, quot;
        const auto& [ge, gc] = *g.terms_.rbegin(); // leading term in lex order
        while (!rem.is_zero()) {
            const auto& [re, rc] = *rem.terms_.rbegin();
            Expo qe;
            for (int i = 0; i < kNumVars; ++i) {
                if (re[static_cast<std::size_t>(i)] < ge[static_cast<std::size_t>(i)]) return false;
                qe[static_cast<std::size_t>(i)] =
                    static_cast<unsigned char>(re[static_cast<std::size_t>(i)] - ge[static_cast<std::size_t>(i)]);
            }
            MultiPoly mono;
            mono.add_term(qe, rc / gc);
            quot = quot + mono;
            rem = rem - mono * g;
        }
        out = quot;
        return true;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            if (!first) os << (c > 0 ? " + " : " - ");
            else if (c < 0)
                os << "-";
            first = false;
            Rational a = boost::multiprecision::abs(c);
            bool printed = false;
            if (a != 1 || e == Expo{}) {
                os << a;
                printed = true;
            }
            for (int i = 0; i < kNumVars; ++i) {
                int k = e[static_cast<std::size_t>(i)];
                if (k == 0) continue;
                if (printed) os << "*";
                os << var_name(static_cast<Var>(i));
                if (k > 1) os << "^" << k;
                printed = true;
            }
        }
        return os.str();
    }

private:
    void add_term(const Expo& e, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    TermMap terms_;
};

template <>
struct RingTraits<MultiPoly> {
    static MultiPoly zero(const MultiPoly&) { return MultiPoly(); }
    static bool is_exact_zero(const MultiPoly& x) { return x.is_zero(); }
    static MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly q;
        if (!MultiPoly::try_divide_exact(a, b, q))
            throw DomainError("inexact polynomial division");
        return q;
    }
};

/**
 * Quotient of two MultiPoly values. No automatic gcd reduction; equality is
 * cross-multiplicative.
 */
struct RationalFunction {
    MultiPoly num, den;

    RationalFunction() : num(), den(MultiPoly::constant(1)) {}
    RationalFunction(MultiPoly n, MultiPoly d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw DomainError("rational function with zero denominator");
    }
    static RationalFunction from_poly(const MultiPoly& p) {
        return RationalFunction(p, MultiPoly::constant(1));
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num * b.num, a.den * b.den);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.num.is_zero()) throw DomainError("division by zero rational function");
        return RationalFunction(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num * b.den == b.num * a.den;
    }
};

} // namespace padicreg
