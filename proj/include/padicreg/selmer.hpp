#pragma once

#include <optional>
#include <vector>

#include "identities.hpp"
#include "linalg.hpp"
#include "padic_roots.hpp"

namespace padicreg {

enum class RepClass { Exotic, RM, CM, Klein };

inline const char* rep_class_name(RepClass rc) {
    switch (rc) {
        case RepClass::Exotic: return "exotic";
        case RepClass::RM: return "rm";
        case RepClass::CM: return "cm";
        case RepClass::Klein: return "klein";
    }
    return "?";
}

// tri-state outcome of an exact condition evaluated at finite precision
enum class Tri { True, False, Undecidable };

inline const char* tri_name(Tri t) {
    switch (t) {
        case Tri::True: return "true";
        case Tri::False: return "false";
        case Tri::Undecidable: return "undecidable";
    }
    return "?";
}

inline Tri tri_of(const PadicNumber& x) {
    if (x.is_certified_nonzero()) return Tri::True;
    if (x.is_exact_zero()) return Tri::False;
    return Tri::Undecidable;
}
inline Tri tri_of(const Rational& x) { return x == 0 ? Tri::False : Tri::True; }

struct MEllRow {
    long ell = 0;
    enum class Kind { Split, Inert, Generic } kind = Kind::Generic;
    std::array<PadicNumber, 3> M;
    std::optional<std::array<Rational, 3>> exact;
    std::optional<Rational> o_ell; // normalization from solve_o_ell; defaults to 1
};

inline const char* mell_kind_name(MEllRow::Kind k) {
    switch (k) {
        case MEllRow::Kind::Split: return "split";
        case MEllRow::Kind::Inert: return "inert";
        case MEllRow::Kind::Generic: return "generic";
    }
    return "?";
}

struct UnitData {
    std::array<PadicNumber, 3> u_L;
    std::array<std::array<PadicNumber, 3>, 3> u_M;
    std::array<std::array<Rational, 3>, 3> O; // p-unit valuation matrix; must be identity
};

struct RegulatorInstance {
    unsigned long p = 5;
    int nu = 1;
    long precision = 16;
    RepClass rep_class = RepClass::Exotic;
    std::array<PadicNumber, 3> L;
    std::array<std::array<PadicNumber, 3>, 3> M;
    std::vector<MEllRow> m_ell;
    std::optional<PadicNumber> alpha; // U_p eigenvalue, used by the eigenform tables
    std::vector<std::string> assumption_flags;

    // exact-rational mirror (log stand-ins); enables the oracle path
    std::optional<std::array<Rational, 3>> L_exact;
    std::optional<std::array<std::array<Rational, 3>, 3>> M_exact;

    std::optional<UnitData> unit_data;

    bool has_exact() const { return L_exact.has_value() && M_exact.has_value(); }
};

inline long min_working_precision() { return 16; }

namespace detail {

inline void require_exact_zero(const PadicNumber& x, const char* name) {
    if (!x.is_exact_zero())
        throw PatternViolation(std::string(name) + " must be exactly zero for this representation class");
}

} // namespace detail

// vanishing patterns of the dihedral classes; Klein adds the symmetry relations
inline void validate_pattern(const RegulatorInstance& inst) {
    const auto& L = inst.L;
    const auto& M = inst.M;
    switch (inst.rep_class) {
        case RepClass::Exotic: break;
        case RepClass::RM:
            detail::require_exact_zero(L[0], "L1");
            detail::require_exact_zero(L[2], "L3");
            detail::require_exact_zero(M[0][1], "M12");
            detail::require_exact_zero(M[1][2], "M23");
            detail::require_exact_zero(M[1][0], "M21");
            detail::require_exact_zero(M[2][1], "M32");
            for (const auto& row : inst.m_ell) {
                if (row.kind == MEllRow::Kind::Split) {
                    if (!row.M[0].is_exact_zero() || !row.M[2].is_exact_zero())
                        throw PatternViolation("split-prime row requires M1 = M3 = 0");
                } else if (row.kind == MEllRow::Kind::Inert) {
                    if (!row.M[1].is_exact_zero())
                        throw PatternViolation("inert-prime row requires M2 = 0");
                }
            }
            break;
        case RepClass::CM:
        case RepClass::Klein:
            detail::require_exact_zero(L[1], "L2");
            detail::require_exact_zero(M[0][1], "M12");
            detail::require_exact_zero(M[1][0], "M21");
            detail::require_exact_zero(M[1][2], "M23");
            detail::require_exact_zero(M[2][1], "M32");
            if (inst.rep_class == RepClass::Klein) {
                if (!L[0].matches(L[2]) || !M[0][0].matches(M[2][2]) || !M[0][2].matches(M[2][0]))
                    throw PatternViolation("Klein symmetry L1=L3, M11=M33, M13=M31 violated");
            }
            break;
    }
    if (inst.precision < min_working_precision())
        throw PrecisionError("instance precision below the minimum of " +
                             std::to_string(min_working_precision()) + " digits");
}

// cross-check unit data: O must be the identity and recomputed lambda values
// must match the stored L and M
inline void validate_unit_data(const RegulatorInstance& inst) {
    if (!inst.unit_data) return;
    const UnitData& ud = *inst.unit_data;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (ud.O[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != Rational(i == j ? 1 : 0))
                throw PatternViolation("unit-data valuation matrix O is not the identity");
    for (int j = 0; j < 3; ++j) {
        PadicNumber lam = normalized_log(ud.u_L[static_cast<std::size_t>(j)], inst.nu);
        if (!lam.matches(inst.L[static_cast<std::size_t>(j)]))
            throw Inconsistent("unit data disagrees with declared L" + std::to_string(j + 1));
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            PadicNumber lam = normalized_log(ud.u_M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], inst.nu);
            if (!lam.matches(inst.M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]))
                throw Inconsistent("unit data disagrees with declared M" + std::to_string(i + 1) +
                                   std::to_string(j + 1));
        }
}

// ---- evaluation of the symbolic builders at an instance ----

namespace detail {

inline std::array<PadicNumber, kNumVars> value_array(const RegulatorInstance& inst) {
    std::array<PadicNumber, kNumVars> vals;
    for (auto& v : vals) v = PadicNumber::exact_zero(inst.p);
    vals[static_cast<std::size_t>(Var::L1)] = inst.L[0];
    vals[static_cast<std::size_t>(Var::L2)] = inst.L[1];
    vals[static_cast<std::size_t>(Var::L3)] = inst.L[2];
    const Var mv[3][3] = {{Var::M11, Var::M12, Var::M13},
                          {Var::M21, Var::M22, Var::M23},
                          {Var::M31, Var::M32, Var::M33}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            vals[static_cast<std::size_t>(mv[i][j])] = inst.M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return vals;
}

inline std::array<Rational, kNumVars> value_array_exact(const RegulatorInstance& inst) {
    std::array<Rational, kNumVars> vals{};
    vals[static_cast<std::size_t>(Var::L1)] = (*inst.L_exact)[0];
    vals[static_cast<std::size_t>(Var::L2)] = (*inst.L_exact)[1];
    vals[static_cast<std::size_t>(Var::L3)] = (*inst.L_exact)[2];
    const Var mv[3][3] = {{Var::M11, Var::M12, Var::M13},
                          {Var::M21, Var::M22, Var::M23},
                          {Var::M31, Var::M32, Var::M33}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            vals[static_cast<std::size_t>(mv[i][j])] =
                (*inst.M_exact)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return vals;
}

} // namespace detail

// specialize a symbolic polynomial in S at the instance's L, M values
inline UniPoly<PadicNumber> eval_poly_S(const MultiPoly& f, const RegulatorInstance& inst,
                                        int formal_degree) {
    auto vals = detail::value_array(inst);
    PadicNumber zero = PadicNumber::exact_zero(inst.p);
    auto conv = [&](const Rational& c) { return PadicNumber::from_rational(inst.p, c, inst.precision); };
    std::vector<PadicNumber> cs;
    int d = f.degree_in(Var::S);
    for (int k = 0; k <= d; ++k) cs.push_back(f.coeff_of(Var::S, k).evaluate(vals, conv, zero));
    if (cs.empty()) cs.push_back(zero);
    return UniPoly<PadicNumber>(cs, std::max(formal_degree, d));
}

inline UniPoly<Rational> eval_poly_S_exact(const MultiPoly& f, const RegulatorInstance& inst,
                                           int formal_degree) {
    auto vals = detail::value_array_exact(inst);
    std::vector<Rational> cs;
    int d = f.degree_in(Var::S);
    for (int k = 0; k <= d; ++k) cs.push_back(f.coeff_of(Var::S, k).evaluate_rational(vals));
    if (cs.empty()) cs.push_back(Rational(0));
    return UniPoly<Rational>(cs, std::max(formal_degree, d));
}

// ---- conditions (res), (sl), (reg) ----

struct Conditions {
    Tri res = Tri::Undecidable;
    Tri sl = Tri::Undecidable;
    Tri reg = Tri::Undecidable;
    // dihedral cross-checks (RM: Q(0) and the four-exponentials form; CM: the
    // anticyclotomic L-invariant reformulations)
    std::optional<Tri> cross_sl, cross_reg;
    bool cross_consistent = true;
    int q_degree = 0;
};

inline Conditions check_conditions(const RegulatorInstance& inst) {
    Conditions out;
    UniPoly<PadicNumber> PL = eval_poly_S(build_PL(), inst, 2);
    UniPoly<PadicNumber> PM = eval_poly_S(build_PM(), inst, 4);
    UniPoly<PadicNumber> Q = eval_poly_S(build_Q(), inst, 4);
    out.q_degree = Q.degree();
    out.res = tri_of(resultant(PL, PM));
    out.reg = tri_of(resultant(Q, PL));
    if (Q.degree() < 2)
        throw DomainError("(sl) needs deg Q >= 2");
    try {
        out.sl = tri_of(discriminant(Q));
    } catch (const PrecisionError&) {
        out.sl = Tri::Undecidable;
    }
    auto mul = [](const PadicNumber& a, const PadicNumber& b) { return a * b; };
    if (inst.rep_class == RepClass::RM) {
        // Q(0) = -4 L2 M31 and Disc(Q) != 0  <=>  4 M13 M31 + (M11-M33)^2 != 0
        PadicNumber q0 = Q.c[0];
        PadicNumber expected = PadicNumber::from_int(inst.p, -4, inst.precision) * inst.L[1] * inst.M[2][0];
        if (!q0.matches(expected)) out.cross_consistent = false;
        out.cross_reg = tri_of(mul(inst.L[1], inst.M[2][0]));
        PadicNumber four = PadicNumber::from_int(inst.p, 4, inst.precision);
        PadicNumber diff = inst.M[0][0] - inst.M[2][2];
        out.cross_sl = tri_of(four * inst.M[0][2] * inst.M[2][0] + diff * diff);
    } else if (inst.rep_class == RepClass::CM || inst.rep_class == RepClass::Klein) {
        auto vals = detail::value_array(inst);
        PadicNumber zero = PadicNumber::exact_zero(inst.p);
        auto conv = [&](const Rational& c) { return PadicNumber::from_rational(inst.p, c, inst.precision); };
        PadicNumber A = cm_A().evaluate(vals, conv, zero);
        PadicNumber B = cm_B().evaluate(vals, conv, zero);
        out.cross_sl = tri_of(A * B);
        out.cross_reg = tri_of(inst.L[0] * B + inst.L[2] * A);
    }
    auto agree = [](Tri a, Tri b) {
        return a == Tri::Undecidable || b == Tri::Undecidable || a == b;
    };
    if (out.cross_sl && !agree(*out.cross_sl, out.sl)) out.cross_consistent = false;
    if (out.cross_reg && !agree(*out.cross_reg, out.reg)) out.cross_consistent = false;
    return out;
}

inline Conditions check_conditions_exact(const RegulatorInstance& inst) {
    Conditions out;
    UniPoly<Rational> PL = eval_poly_S_exact(build_PL(), inst, 2);
    UniPoly<Rational> PM = eval_poly_S_exact(build_PM(), inst, 4);
    UniPoly<Rational> Q = eval_poly_S_exact(build_Q(), inst, 4);
    out.q_degree = Q.degree();
    out.res = tri_of(resultant(PL, PM));
    out.reg = tri_of(resultant(Q, PL));
    if (Q.degree() >= 2) out.sl = tri_of(discriminant(Q));
    return out;
}

} // namespace padicreg
