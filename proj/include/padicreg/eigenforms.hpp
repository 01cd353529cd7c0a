#pragma once

#include <map>

#include "selmer_slopes.hpp"

namespace padicreg {

// theta-coordinates of a cocycle class in the basis (w1, w2, w3) of W/U;
// defined modulo the line spanned by (L1, L2, L3)
struct CocycleCoordinates {
    std::array<QuadExtElement, 3> x;
};

// The unique o(l) with group_ratio * w_l proportional to the ord-weighted
// vector (ord(k(w3)), ord(k(w2))/2, ord(k(w1))) in the basis (w1, w2, w3).
inline Rational solve_o_ell(const std::array<Rational, 3>& w_ell_coords, const Rational& group_ratio,
                            const std::array<Rational, 3>& ord_values) {
    std::array<Rational, 3> weighted = {ord_values[0], ord_values[1] / 2, ord_values[2]};
    std::array<Rational, 3> lhs = {group_ratio * w_ell_coords[0], group_ratio * w_ell_coords[1],
                                   group_ratio * w_ell_coords[2]};
    int piv = -1;
    for (int i = 0; i < 3; ++i)
        if (weighted[static_cast<std::size_t>(i)] != 0) {
            piv = i;
            break;
        }
    if (piv < 0) throw ZeroVector("ord-weighted vector vanishes");
    Rational o = lhs[static_cast<std::size_t>(piv)] / weighted[static_cast<std::size_t>(piv)];
    for (int i = 0; i < 3; ++i)
        if (lhs[static_cast<std::size_t>(i)] != o * weighted[static_cast<std::size_t>(i)])
            throw Inconsistent("w_ell is not proportional to the ord-weighted vector");
    return o;
}

namespace detail {

inline const MEllRow* find_m_ell(const RegulatorInstance& inst, long ell) {
    for (const auto& row : inst.m_ell)
        if (row.ell == ell) return &row;
    return nullptr;
}

// shared quadratic extension for values coming from two slopes
inline PadicNumber common_disc(const QuadExtElement& a, const QuadExtElement& b) {
    if (a.im().is_exact_zero()) return b.disc();
    if (b.im().is_exact_zero()) return a.disc();
    if (a.disc().matches(b.disc())) return a.disc();
    throw DomainError("slopes lie in different quadratic extensions");
}

inline QuadExtElement reembed(const QuadExtElement& x, const PadicNumber& d) {
    if (x.im().is_exact_zero()) return QuadExtElement::embed(x.re(), d);
    if (!x.disc().matches(d)) throw DomainError("cannot re-embed across quadratic extensions");
    return QuadExtElement(x.re(), x.im(), d);
}

} // namespace detail

// a_l = o(l) * det [ xi | L | M^(l) ]; zero at primes where f is irregular
inline QuadExtElement coeff_a_ell(const CocycleCoordinates& xi, const RegulatorInstance& inst,
                                  long ell, const Rational& o_ell) {
    const PadicNumber& d = xi.x[0].disc();
    QuadExtElement zero(PadicNumber::exact_zero(inst.p), PadicNumber::exact_zero(inst.p), d);
    const MEllRow* row = detail::find_m_ell(inst, ell);
    if (row == nullptr) throw MissingRow("no M^(l) data for prime " + std::to_string(ell));
    auto embed = [&](const PadicNumber& v) { return QuadExtElement::embed(v, d); };
    Matrix<QuadExtElement> m(3, std::vector<QuadExtElement>(3, zero));
    for (int i = 0; i < 3; ++i) {
        m[static_cast<std::size_t>(i)][0] = xi.x[static_cast<std::size_t>(i)];
        m[static_cast<std::size_t>(i)][1] = embed(inst.L[static_cast<std::size_t>(i)]);
        m[static_cast<std::size_t>(i)][2] = embed(row->M[static_cast<std::size_t>(i)]);
    }
    QuadExtElement det = det_dp(m);
    Rational o = row->o_ell ? *row->o_ell : o_ell;
    return embed(PadicNumber::from_rational(inst.p, o, inst.precision)) * det;
}

// traceless lambda-part of the local Selmer cocycle at slope s, used as the
// slope-parameterized stand-in for theta coordinates: only differences of two
// slopes ever enter a q-expansion
inline CocycleCoordinates cocycle_surrogate(const RegulatorInstance& inst, const SlopeReport& rep) {
    if (!rep.tx_defined)
        throw DomainError("cocycle surrogate needs x, t defined (P_L(s) != 0)");
    const PadicNumber& d = rep.slope.disc();
    QuadExtElement half =
        QuadExtElement::embed(PadicNumber::from_int(inst.p, 2, inst.precision).inverse(), d);
    QuadExtElement one = QuadExtElement::embed(PadicNumber::from_int(inst.p, 1, inst.precision), d);
    const QuadExtElement& s = rep.slope;
    const QuadExtElement& x = rep.x;
    return {{x, half - s * x, s * (one - s * x)}};
}

struct QExpansion {
    std::string label;
    std::map<long, QuadExtElement> a; // index n -> coefficient; only primes and 1 are populated
};

// g_{F,F'}: a_1 = 0, a_p = alpha (t - t'), a_l = o(l) det[ xi_diff | L | M^(l) ]
inline QExpansion coeffs_g(const RegulatorInstance& inst, const SlopeReport& F,
                           const SlopeReport& Fp, const PadicNumber& alpha,
                           const std::vector<long>& primes) {
    QuadExtElement sdiff = F.slope - detail::reembed(Fp.slope, F.slope.disc());
    if (!sdiff.is_certified_nonzero()) throw DomainError("coeffs_g requires distinct slopes");
    PadicNumber d = detail::common_disc(F.slope, Fp.slope);
    QExpansion out;
    out.label = "g";
    QuadExtElement zero(PadicNumber::exact_zero(inst.p), PadicNumber::exact_zero(inst.p), d);
    out.a.insert_or_assign(1L, zero);
    CocycleCoordinates cF = cocycle_surrogate(inst, F), cFp = cocycle_surrogate(inst, Fp);
    CocycleCoordinates diff{{detail::reembed(cF.x[0], d) - detail::reembed(cFp.x[0], d),
                             detail::reembed(cF.x[1], d) - detail::reembed(cFp.x[1], d),
                             detail::reembed(cF.x[2], d) - detail::reembed(cFp.x[2], d)}};
    out.a.insert_or_assign(static_cast<long>(inst.p),
                           QuadExtElement::embed(alpha, d) *
                               (detail::reembed(F.t, d) - detail::reembed(Fp.t, d)));
    for (long ell : primes) {
        if (ell == static_cast<long>(inst.p)) continue;
        out.a.insert_or_assign(ell, coeff_a_ell(diff, inst, ell, Rational(1)));
    }
    return out;
}

struct CotangentCertificate {
    bool four_distinct = false;
    int g_rank = 0;             // rank of the three q-expansion vectors (a_p and a_l columns)
    bool rank3 = false;         // cotangent surjectivity
    int al_only_rank = 0;       // 2-dimensional image of W/U: a_l columns alone
    int with_fqp_rank = 0;      // adding f(q^p) must not grow the span
    bool single_relation = false;
    int span_dimension = 0;     // of {f_alpha, f(q^p), g1, g2, g3}
    std::vector<std::pair<long, std::array<QuadExtElement, 3>>> structure_map;
    std::string failure; // offending minor description on rank shortfall
};

// First-order structure of the Hecke algebra at the four slopes: certifies the
// q-expansion rank of g_{F',F}, g_{F'',F}, g_{F''',F} and emits the map
// T_n - a_n -> (b1, b2, b3) coordinates.
inline CotangentCertificate certify_basis_and_cotangent(const RegulatorInstance& inst,
                                                        const std::array<SlopeReport, 4>& reps,
                                                        const PadicNumber& alpha,
                                                        const std::vector<long>& primes) {
    CotangentCertificate cert;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            QuadExtElement diff =
                reps[static_cast<std::size_t>(i)].slope -
                detail::reembed(reps[static_cast<std::size_t>(j)].slope, reps[static_cast<std::size_t>(i)].slope.disc());
            if (!diff.is_certified_nonzero()) throw DomainError("duplicate slope input");
        }
    cert.four_distinct = true;

    std::vector<QExpansion> gs;
    for (int i = 1; i < 4; ++i)
        gs.push_back(coeffs_g(inst, reps[static_cast<std::size_t>(i)], reps[0], alpha, primes));

    PadicNumber d = gs[0].a.begin()->second.disc();
    QuadExtElement zero(PadicNumber::exact_zero(inst.p), PadicNumber::exact_zero(inst.p), d);
    QuadExtElement one = QuadExtElement::embed(PadicNumber::from_int(inst.p, 1, inst.precision), d);

    std::vector<long> cols;
    cols.push_back(static_cast<long>(inst.p));
    for (long ell : primes)
        if (ell != static_cast<long>(inst.p)) cols.push_back(ell);

    Matrix<QuadExtElement> G(3, std::vector<QuadExtElement>(cols.size(), zero));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) G[i][j] = gs[i].a.at(cols[j]);
    cert.g_rank = rank_certified(G);
    cert.rank3 = cert.g_rank == 3;
    if (!cert.rank3)
        cert.failure = "q-expansion vectors of the g's have rank " + std::to_string(cert.g_rank) +
                       " < 3 over the supplied primes";

    Matrix<QuadExtElement> Gl(3, std::vector<QuadExtElement>(cols.size() - 1, zero));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 1; j < cols.size(); ++j) Gl[i][j - 1] = G[i][j];
    cert.al_only_rank = rank_certified(Gl);

    // f(q^p) has a_1 = 0, a_p = 1 and a_l = 0: a single relation among
    // {f(q^p), g1, g2, g3} pins the span of the five forms to dimension 4
    Matrix<QuadExtElement> F = G;
    F.push_back(std::vector<QuadExtElement>(cols.size(), zero));
    F.back()[0] = one;
    cert.with_fqp_rank = rank_certified(F);
    cert.single_relation = cert.with_fqp_rank == 3 && cert.g_rank == 3;
    cert.span_dimension = cert.with_fqp_rank + 1; // f_alpha alone has a_1 = 1

    for (std::size_t j = 0; j < cols.size(); ++j)
        cert.structure_map.push_back({cols[j], {G[0][j], G[1][j], G[2][j]}});
    return cert;
}

} // namespace padicreg
