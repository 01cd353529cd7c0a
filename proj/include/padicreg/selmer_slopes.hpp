#pragma once

#include "selmer.hpp"

namespace padicreg {

inline Tri tri_of(const QuadExtElement& x) {
    if (x.is_certified_nonzero()) return Tri::True;
    if (x.is_exact_zero()) return Tri::False;
    return Tri::Undecidable;
}
inline Tri tri_of(const QuadRational& x) { return x.is_zero() ? Tri::False : Tri::True; }

// ---- the two Selmer-rank matrices at a slope s ----
// rows: the L-row and three M-rows; 3 columns for ad^0, 4 for ad.
template <class Sc>
Matrix<Sc> selmer_matrix_ad0(const std::array<Sc, 3>& L, const std::array<std::array<Sc, 3>, 3>& M,
                             const Sc& s, const Sc& one, const Sc& two) {
    auto prow = [&](const Sc& a, const Sc& b, const Sc& c) { return a - b * s - c * s * s; };
    Sc zero = one - one;
    Matrix<Sc> m(4, std::vector<Sc>(3, zero));
    m[0][0] = prow(L[0], L[1], L[2]);
    for (int i = 0; i < 3; ++i)
        m[static_cast<std::size_t>(i + 1)][0] = prow(M[static_cast<std::size_t>(i)][0],
                                                     M[static_cast<std::size_t>(i)][1],
                                                     M[static_cast<std::size_t>(i)][2]);
    m[1][1] = one;
    m[2][1] = -s;
    m[3][1] = -(s * s);
    m[2][2] = one;
    m[3][2] = two * s;
    return m;
}

template <class Sc>
Matrix<Sc> selmer_matrix_ad(const std::array<Sc, 3>& L, const std::array<std::array<Sc, 3>, 3>& M,
                            const Sc& s, const Sc& one, const Sc& two) {
    Matrix<Sc> base = selmer_matrix_ad0(L, M, s, one, two);
    auto drow = [&](const Sc& b, const Sc& c) { return b + two * s * c; };
    Matrix<Sc> m(4, std::vector<Sc>(4, one - one));
    m[0][0] = base[0][0];
    m[0][1] = drow(L[1], L[2]);
    for (int i = 0; i < 3; ++i) {
        m[static_cast<std::size_t>(i + 1)][0] = base[static_cast<std::size_t>(i + 1)][0];
        m[static_cast<std::size_t>(i + 1)][1] = drow(M[static_cast<std::size_t>(i)][1],
                                                     M[static_cast<std::size_t>(i)][2]);
        m[static_cast<std::size_t>(i + 1)][2] = base[static_cast<std::size_t>(i + 1)][1];
        m[static_cast<std::size_t>(i + 1)][3] = base[static_cast<std::size_t>(i + 1)][2];
    }
    return m;
}

namespace detail {

inline QuadExtElement embed_qp(const PadicNumber& x, const PadicNumber& d) {
    return QuadExtElement::embed(x, d);
}

inline PadicNumber default_ext_disc(const RegulatorInstance& inst) {
    return PadicNumber::from_int(inst.p, smallest_nonresidue(inst.p), inst.precision);
}

inline std::array<QuadExtElement, 3> embed_L(const RegulatorInstance& inst, const PadicNumber& d) {
    return {embed_qp(inst.L[0], d), embed_qp(inst.L[1], d), embed_qp(inst.L[2], d)};
}
inline std::array<std::array<QuadExtElement, 3>, 3> embed_M(const RegulatorInstance& inst,
                                                            const PadicNumber& d) {
    std::array<std::array<QuadExtElement, 3>, 3> out{{{embed_qp(inst.M[0][0], d), embed_qp(inst.M[0][1], d), embed_qp(inst.M[0][2], d)},
                                                      {embed_qp(inst.M[1][0], d), embed_qp(inst.M[1][1], d), embed_qp(inst.M[1][2], d)},
                                                      {embed_qp(inst.M[2][0], d), embed_qp(inst.M[2][1], d), embed_qp(inst.M[2][2], d)}}};
    return out;
}

} // namespace detail

struct SelmerDims {
    int ad0 = -1;
    int ad = -1;
    bool exact = false; // certified by the exact-rational oracle path
};

// dim Sel(ad^0) = 3 - rank, dim Sel(ad) = 4 - rank, with certified ranks
inline SelmerDims selmer_dims(const RegulatorInstance& inst, const QuadExtElement& s) {
    PadicNumber one_p = PadicNumber::from_int(inst.p, 1, inst.precision);
    PadicNumber two_p = PadicNumber::from_int(inst.p, 2, inst.precision);
    const PadicNumber& d = s.disc();
    QuadExtElement one = detail::embed_qp(one_p, d), two = detail::embed_qp(two_p, d);
    auto L = detail::embed_L(inst, d);
    auto M = detail::embed_M(inst, d);
    SelmerDims out;
    out.ad0 = 3 - rank_certified(selmer_matrix_ad0(L, M, s, one, two));
    out.ad = 4 - rank_certified(selmer_matrix_ad(L, M, s, one, two));
    return out;
}

inline SelmerDims selmer_dims(const RegulatorInstance& inst, const PadicNumber& s) {
    return selmer_dims(inst, QuadExtElement::embed(s, detail::default_ext_disc(inst)));
}

inline SelmerDims selmer_dims_exact(const RegulatorInstance& inst, const QuadRational& s) {
    if (!inst.has_exact()) throw DomainError("instance carries no exact values");
    QuadRational one(1, 0, s.d), two(2, 0, s.d);
    std::array<QuadRational, 3> L;
    std::array<std::array<QuadRational, 3>, 3> M;
    for (int j = 0; j < 3; ++j) L[static_cast<std::size_t>(j)] = QuadRational((*inst.L_exact)[static_cast<std::size_t>(j)], 0, s.d);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                QuadRational((*inst.M_exact)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], 0, s.d);
    SelmerDims out;
    out.ad0 = 3 - rank_exact(selmer_matrix_ad0(L, M, s, one, two));
    out.ad = 4 - rank_exact(selmer_matrix_ad(L, M, s, one, two));
    out.exact = true;
    return out;
}

// ---- t, x, z at a slope ----

struct SlopeInvariants {
    bool tx_defined = false; // P_L(s) != 0 certified
    QuadExtElement t, x;
    bool z_infinite = false;
    QuadExtElement z;

    SlopeInvariants(const QuadExtElement& zero) : t(zero), x(zero), z(zero) {}
};

inline SlopeInvariants invariants_at_slope(const RegulatorInstance& inst, const QuadExtElement& s) {
    const PadicNumber& d = s.disc();
    auto embed = [&](const PadicNumber& v) { return QuadExtElement::embed(v, d); };
    UniPoly<PadicNumber> PL = eval_poly_S(build_PL(), inst, 2);
    UniPoly<PadicNumber> K3 = eval_poly_S(build_K3(), inst, 3);
    UniPoly<PadicNumber> K4 = eval_poly_S(build_K4(), inst, 3);
    QuadExtElement pls = PL.eval_conv(s, embed);
    QuadExtElement zero = embed(PadicNumber::exact_zero(inst.p));
    SlopeInvariants out(zero);
    QuadExtElement two = embed(PadicNumber::from_int(inst.p, 2, inst.precision));
    QuadExtElement four = embed(PadicNumber::from_int(inst.p, 4, inst.precision));
    if (pls.is_exact_zero()) {
        out.z_infinite = true; // c-slope is infinity; x, t undefined only if P_L(s) = 0
        return out;
    }
    if (!pls.is_certified_nonzero())
        throw PrecisionError("P_L(s) indistinguishable from zero at working precision");
    QuadExtElement l2p = embed(inst.L[1]), l3p = embed(inst.L[2]);
    out.x = -(l2p + two * s * l3p) / (two * pls);
    out.t = -(K3.eval_conv(s, embed) / (four * pls));
    out.z = -(K4.eval_conv(s, embed) / (two * pls));
    out.tx_defined = true;
    return out;
}

struct SlopeInvariantsExact {
    bool tx_defined = false;
    QuadRational t, x, z;
    bool z_infinite = false;
};

inline SlopeInvariantsExact invariants_at_slope_exact(const RegulatorInstance& inst,
                                                      const QuadRational& s) {
    UniPoly<Rational> PL = eval_poly_S_exact(build_PL(), inst, 2);
    UniPoly<Rational> K3 = eval_poly_S_exact(build_K3(), inst, 3);
    UniPoly<Rational> K4 = eval_poly_S_exact(build_K4(), inst, 3);
    auto embed = [&](const Rational& v) { return QuadRational(v, 0, s.d); };
    QuadRational pls = PL.eval_conv(s, embed);
    SlopeInvariantsExact out;
    if (pls.is_zero()) {
        out.z_infinite = true;
        return out;
    }
    QuadRational two(2, 0, s.d), four(4, 0, s.d);
    out.x = -(embed((*inst.L_exact)[1]) + two * s * embed((*inst.L_exact)[2])) / (two * pls);
    out.t = -(K3.eval_conv(s, embed) / (four * pls));
    out.z = -(K4.eval_conv(s, embed) / (two * pls));
    out.tx_defined = true;
    return out;
}

// ---- slope reports ----

struct SlopeReport {
    QuadExtElement slope;
    bool slope_in_qp = true;
    int multiplicity = 1;
    bool certified_simple = true;
    bool tx_defined = false;
    QuadExtElement t, x;
    bool z_infinite = false;
    QuadExtElement z;
    QuadExtElement gs_l_invariant; // -2t
    SelmerDims dims;
    Tri cond_S = Tri::Undecidable; // z != -2t
    std::optional<QuadRational> slope_exact, t_exact, x_exact, z_exact;

    SlopeReport(const QuadExtElement& zero)
        : slope(zero), t(zero), x(zero), z(zero), gs_l_invariant(zero) {}
};

struct SlopesResult {
    std::vector<SlopeReport> slopes;
    int q_degree = 0;
    int unsupported_degree = 0;
    bool complete() const {
        int m = unsupported_degree;
        for (const auto& s : slopes) m += s.multiplicity;
        return m == q_degree;
    }
};

namespace detail {

// try to recognize a p-adic scalar as a small rational, verified elsewhere
inline std::optional<Rational> reconstruct_rational(const PadicNumber& x) {
    if (x.is_exact_zero()) return Rational(0);
    if (x.is_inexact_zero()) return std::nullopt;
    Int pn = pow_int(Int(x.prime()), static_cast<unsigned long>(x.rel_precision()));
    Rational unit_part;
    if (!rational_reconstruct(x.unit_digits(), pn, unit_part)) return std::nullopt;
    long v = x.valuation();
    Rational scale = v >= 0 ? Rational(pow_int(Int(x.prime()), static_cast<unsigned long>(v)))
                            : Rational(1, pow_int(Int(x.prime()), static_cast<unsigned long>(-v)));
    return unit_part * scale;
}

inline std::optional<QuadRational> reconstruct_quad(const QuadExtElement& x) {
    auto a = reconstruct_rational(x.re());
    if (!a) return std::nullopt;
    if (x.im().is_exact_zero()) return QuadRational(*a, 0, 0);
    auto b = reconstruct_rational(x.im());
    auto d = reconstruct_rational(x.disc());
    if (!b || !d) return std::nullopt;
    if (boost::multiprecision::denominator(*d) != 1) return std::nullopt;
    return QuadRational(*a, *b, boost::multiprecision::numerator(*d));
}

} // namespace detail

// Residual slopes: the roots of Q(S), annotated with t, x, z, the Selmer
// dimensions, and the condition (S_V+). For instances with exact-rational
// stand-ins, roots recognized over Q (or a quadratic field) are certified by
// the exact oracle path.
inline SlopesResult residual_slopes(const RegulatorInstance& inst) {
    UniPoly<PadicNumber> Q = eval_poly_S(build_Q(), inst, 4);
    SlopesResult out;
    out.q_degree = Q.degree();
    RootsResult roots = padic_roots(Q);
    out.unsupported_degree = roots.unsupported_degree;
    if (roots.unsupported_degree > 0)
        throw UnsupportedSplittingField(roots.unsupported_degree);

    std::optional<UniPoly<Rational>> Qx;
    if (inst.has_exact()) Qx = eval_poly_S_exact(build_Q(), inst, 4);

    PadicNumber d0 = detail::default_ext_disc(inst);
    for (const auto& root : roots.roots) {
        QuadExtElement s = root.in_qp() ? QuadExtElement::embed(root.qp(), d0) : root.ext();
        SlopeReport rep(QuadExtElement::embed(PadicNumber::exact_zero(inst.p), s.disc()));
        rep.slope = s;
        rep.slope_in_qp = root.in_qp();
        rep.multiplicity = root.multiplicity;
        rep.certified_simple = root.certified_simple;

        SlopeInvariants inv = invariants_at_slope(inst, s);
        rep.tx_defined = inv.tx_defined;
        rep.z_infinite = inv.z_infinite;
        if (inv.tx_defined) {
            rep.t = inv.t;
            rep.x = inv.x;
            rep.z = inv.z;
            QuadExtElement two = QuadExtElement::embed(PadicNumber::from_int(inst.p, 2, inst.precision), s.disc());
            rep.gs_l_invariant = -(two * inv.t);
            rep.cond_S = inv.z_infinite ? Tri::True : tri_of(inv.z + two * inv.t);
        } else if (inv.z_infinite) {
            rep.cond_S = Tri::True; // infinite c-slope differs from any finite -2t
        }

        // exact oracle path: recognize the slope over Q or a quadratic field
        bool exact_done = false;
        if (Qx) {
            auto se = detail::reconstruct_quad(s);
            if (se) {
                QuadRational zero(0, 0, se->d);
                auto conv = [&](const Rational& c) { return QuadRational(c, 0, se->d); };
                QuadRational val = Qx->eval_conv(*se, conv);
                if (val.is_zero()) {
                    rep.slope_exact = se;
                    rep.dims = selmer_dims_exact(inst, *se);
                    auto ie = invariants_at_slope_exact(inst, *se);
                    if (ie.tx_defined) {
                        rep.t_exact = ie.t;
                        rep.x_exact = ie.x;
                        rep.z_exact = ie.z;
                        QuadRational two(2, 0, se->d);
                        rep.cond_S = tri_of(ie.z + two * ie.t);
                    }
                    exact_done = true;
                }
            }
        }
        if (!exact_done) {
            try {
                rep.dims = selmer_dims(inst, s);
            } catch (const RankUndecidable&) {
                rep.dims = SelmerDims{}; // -1, -1: undecidable at working precision
            }
        }
        out.slopes.push_back(rep);
    }
    return out;
}

// ---- dihedral-case regulators ----

struct GrossRegulatorReport {
    PadicNumber regulator;       // (M11 M33 - M31 M13) * log_p(1+p^nu)^2
    PadicNumber intro_condition; // (4 M13 M31 + (M11-M33)^2) * log_p(1+p^nu)^2
};

inline GrossRegulatorReport gross_regulator_RM(const RegulatorInstance& inst) {
    if (inst.rep_class != RepClass::RM)
        throw DomainError("Gross regulator requires the RM representation class");
    PadicNumber c = log_p(PadicNumber::from_int(
        inst.p, 1 + pow_int(Int(inst.p), static_cast<unsigned long>(inst.nu)), inst.precision + inst.nu + 2));
    PadicNumber c2 = c * c;
    PadicNumber reg = (inst.M[0][0] * inst.M[2][2] - inst.M[2][0] * inst.M[0][2]) * c2;
    PadicNumber diff = inst.M[0][0] - inst.M[2][2];
    PadicNumber four = PadicNumber::from_int(inst.p, 4, inst.precision);
    PadicNumber cond = (four * inst.M[0][2] * inst.M[2][0] + diff * diff) * c2;
    return {reg, cond};
}

struct CMLInvariants {
    PadicNumber S_phi, L_p, L_minus_phi, L_minus_phibar;
    Tri sl_equiv, reg_equiv; // nonvanishing of the product resp. the sum
};

inline CMLInvariants cm_l_invariants(const RegulatorInstance& inst) {
    if (inst.rep_class != RepClass::CM && inst.rep_class != RepClass::Klein)
        throw DomainError("anticyclotomic L-invariants require the CM or Klein class");
    const PadicNumber &L1 = inst.L[0], &L3 = inst.L[2];
    if (!L1.is_certified_nonzero() || !L3.is_certified_nonzero())
        throw PrecisionError("L1 and L3 must be certified nonzero");
    PadicNumber half = PadicNumber::from_int(inst.p, 2, inst.precision).inverse();
    CMLInvariants out{
        -(L1 / L3),
        -(half * inst.M[1][1]),
        -((L1 * inst.M[2][2] - L3 * inst.M[2][0]) / L1) + inst.M[1][1],
        -((L3 * inst.M[0][0] - L1 * inst.M[0][2]) / L3) + inst.M[1][1],
        Tri::Undecidable,
        Tri::Undecidable,
    };
    out.sl_equiv = tri_of(out.L_minus_phi * out.L_minus_phibar);
    out.reg_equiv = tri_of(out.L_minus_phi + out.L_minus_phibar);
    return out;
}

struct WaldschmidtBound {
    Rational bound;        // l*m/(l+m)
    Int certified_rank;    // smallest integer >= bound
};

inline WaldschmidtBound waldschmidt_rank_bound(long m, long l) {
    if (m <= 0 || l <= 0) throw DomainError("waldschmidt bound needs positive dimensions");
    Rational b(Int(l) * Int(m), Int(l) + Int(m));
    return {b, ceil_rational(b)};
}

} // namespace padicreg
