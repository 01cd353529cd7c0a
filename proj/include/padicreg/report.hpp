#pragma once

#include "eigenforms.hpp"
#include "io.hpp"
#include "local_ring.hpp"

namespace padicreg {

inline std::string format_quadext(const QuadExtElement& x) {
    if (x.im().is_exact_zero()) return format_padic(x.re());
    return "quad:" + format_padic(x.re()) + "|" + format_padic(x.im()) + "|" + format_padic(x.disc());
}

inline std::string format_rational(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline std::string format_quadrational(const QuadRational& q) {
    if (q.b == 0) return format_rational(q.a);
    return format_rational(q.a) + " + (" + format_rational(q.b) + ")*sqrt(" + q.d.str() + ")";
}

struct AnalysisReport {
    unsigned long p = 5;
    long precision = 16;
    RepClass rep_class = RepClass::Exotic;
    bool exact_path = false;
    Conditions conditions;
    bool slopes_computed = false;
    SlopesResult slopes;
    std::optional<GrossRegulatorReport> gross;
    std::optional<CMLInvariants> cm;
    std::optional<CotangentCertificate> cotangent;
    std::string cotangent_error;
};

inline AnalysisReport analyze(const RegulatorInstance& inst) {
    AnalysisReport rep;
    rep.p = inst.p;
    rep.precision = inst.precision;
    rep.rep_class = inst.rep_class;
    rep.exact_path = inst.has_exact();

    rep.conditions = check_conditions(inst);
    if (inst.has_exact()) {
        Conditions ex = check_conditions_exact(inst);
        auto merge = [](Tri numeric, Tri exact) {
            if (numeric != Tri::Undecidable && exact != Tri::Undecidable && numeric != exact)
                throw Inconsistent("numeric and exact condition evaluations disagree");
            return exact == Tri::Undecidable ? numeric : exact;
        };
        rep.conditions.res = merge(rep.conditions.res, ex.res);
        rep.conditions.sl = merge(rep.conditions.sl, ex.sl);
        rep.conditions.reg = merge(rep.conditions.reg, ex.reg);
    }

    bool any_false = rep.conditions.res == Tri::False || rep.conditions.sl == Tri::False ||
                     rep.conditions.reg == Tri::False;
    bool any_undecidable = rep.conditions.res == Tri::Undecidable ||
                           rep.conditions.sl == Tri::Undecidable ||
                           rep.conditions.reg == Tri::Undecidable;
    if (!any_false && !any_undecidable) {
        rep.slopes = residual_slopes(inst);
        rep.slopes_computed = true;
    }

    if (inst.rep_class == RepClass::RM) rep.gross = gross_regulator_RM(inst);
    if (inst.rep_class == RepClass::CM || inst.rep_class == RepClass::Klein)
        rep.cm = cm_l_invariants(inst);

    if (rep.slopes_computed && !inst.m_ell.empty() && inst.alpha &&
        rep.slopes.slopes.size() == 4) {
        bool all_defined = true;
        for (const auto& s : rep.slopes.slopes) all_defined = all_defined && s.tx_defined;
        if (all_defined) {
            try {
                std::array<SlopeReport, 4> four = {rep.slopes.slopes[0], rep.slopes.slopes[1],
                                                   rep.slopes.slopes[2], rep.slopes.slopes[3]};
                std::vector<long> primes;
                for (const auto& row : inst.m_ell) primes.push_back(row.ell);
                rep.cotangent = certify_basis_and_cotangent(inst, four, *inst.alpha, primes);
            } catch (const Error& e) {
                rep.cotangent_error = e.what();
            }
        }
    }
    return rep;
}

// ---- structured emission (same INI dialect as instance files) ----

inline std::string emit_report(const AnalysisReport& rep) {
    std::ostringstream os;
    os << "[report]\n";
    os << "format = 1\n";
    os << "prime = " << rep.p << "\n";
    os << "precision = " << rep.precision << "\n";
    os << "rep_class = \"" << rep_class_name(rep.rep_class) << "\"\n";
    os << "exact_path = \"" << (rep.exact_path ? "true" : "false") << "\"\n";
    os << "\n[conditions]\n";
    os << "res = \"" << tri_name(rep.conditions.res) << "\"\n";
    os << "sl = \"" << tri_name(rep.conditions.sl) << "\"\n";
    os << "reg = \"" << tri_name(rep.conditions.reg) << "\"\n";
    os << "q_degree = " << rep.conditions.q_degree << "\n";
    os << "cross_consistent = \"" << (rep.conditions.cross_consistent ? "true" : "false") << "\"\n";
    if (rep.conditions.cross_sl) os << "cross_sl = \"" << tri_name(*rep.conditions.cross_sl) << "\"\n";
    if (rep.conditions.cross_reg)
        os << "cross_reg = \"" << tri_name(*rep.conditions.cross_reg) << "\"\n";
    if (rep.slopes_computed) {
        for (const auto& s : rep.slopes.slopes) {
            os << "\n[[slope]]\n";
            os << "value = \"" << format_quadext(s.slope) << "\"\n";
            os << "in_qp = \"" << (s.slope_in_qp ? "true" : "false") << "\"\n";
            os << "multiplicity = " << s.multiplicity << "\n";
            os << "certified_simple = \"" << (s.certified_simple ? "true" : "false") << "\"\n";
            os << "tx_defined = \"" << (s.tx_defined ? "true" : "false") << "\"\n";
            if (s.tx_defined) {
                os << "t = \"" << format_quadext(s.t) << "\"\n";
                os << "x = \"" << format_quadext(s.x) << "\"\n";
                os << "z = \"" << (s.z_infinite ? std::string("inf") : format_quadext(s.z)) << "\"\n";
                os << "gs_l_invariant = \"" << format_quadext(s.gs_l_invariant) << "\"\n";
            } else if (s.z_infinite) {
                os << "z = \"inf\"\n";
            }
            os << "selmer_ad0 = " << s.dims.ad0 << "\n";
            os << "selmer_ad = " << s.dims.ad << "\n";
            os << "dims_exact = \"" << (s.dims.exact ? "true" : "false") << "\"\n";
            os << "cond_S = \"" << tri_name(s.cond_S) << "\"\n";
            if (s.slope_exact) os << "slope_exact = \"" << format_quadrational(*s.slope_exact) << "\"\n";
            if (s.t_exact) os << "t_exact = \"" << format_quadrational(*s.t_exact) << "\"\n";
            if (s.x_exact) os << "x_exact = \"" << format_quadrational(*s.x_exact) << "\"\n";
            if (s.z_exact) os << "z_exact = \"" << format_quadrational(*s.z_exact) << "\"\n";
        }
    }
    if (rep.gross) {
        os << "\n[gross_regulator]\n";
        os << "regulator = \"" << format_padic(rep.gross->regulator) << "\"\n";
        os << "intro_condition = \"" << format_padic(rep.gross->intro_condition) << "\"\n";
    }
    if (rep.cm) {
        os << "\n[cm_l_invariants]\n";
        os << "S_phi = \"" << format_padic(rep.cm->S_phi) << "\"\n";
        os << "L_p = \"" << format_padic(rep.cm->L_p) << "\"\n";
        os << "L_minus_phi = \"" << format_padic(rep.cm->L_minus_phi) << "\"\n";
        os << "L_minus_phibar = \"" << format_padic(rep.cm->L_minus_phibar) << "\"\n";
        os << "sl_equiv = \"" << tri_name(rep.cm->sl_equiv) << "\"\n";
        os << "reg_equiv = \"" << tri_name(rep.cm->reg_equiv) << "\"\n";
    }
    if (rep.cotangent) {
        os << "\n[cotangent]\n";
        os << "g_rank = " << rep.cotangent->g_rank << "\n";
        os << "rank3 = \"" << (rep.cotangent->rank3 ? "true" : "false") << "\"\n";
        os << "al_only_rank = " << rep.cotangent->al_only_rank << "\n";
        os << "single_relation = \"" << (rep.cotangent->single_relation ? "true" : "false") << "\"\n";
        os << "span_dimension = " << rep.cotangent->span_dimension << "\n";
        for (const auto& [n, coords] : rep.cotangent->structure_map) {
            os << "\n[[structure_map]]\n";
            os << "n = " << n << "\n";
            os << "b1 = \"" << format_quadext(coords[0]) << "\"\n";
            os << "b2 = \"" << format_quadext(coords[1]) << "\"\n";
            os << "b3 = \"" << format_quadext(coords[2]) << "\"\n";
        }
    } else if (!rep.cotangent_error.empty()) {
        os << "\n[cotangent]\n";
        os << "error = \"" << rep.cotangent_error << "\"\n";
    }
    return os.str();
}

inline std::string emit_report_text(const AnalysisReport& rep) {
    std::ostringstream os;
    os << "instance: p = " << rep.p << ", precision = " << rep.precision << ", class = "
       << rep_class_name(rep.rep_class) << (rep.exact_path ? " (exact oracle path)" : "") << "\n";
    os << "conditions: (res) " << tri_name(rep.conditions.res) << ", (sl) "
       << tri_name(rep.conditions.sl) << ", (reg) " << tri_name(rep.conditions.reg)
       << "  [deg Q = " << rep.conditions.q_degree << "]\n";
    if (rep.conditions.cross_sl || rep.conditions.cross_reg) {
        os << "  dihedral cross-checks:";
        if (rep.conditions.cross_sl) os << " (sl)<=>" << tri_name(*rep.conditions.cross_sl);
        if (rep.conditions.cross_reg) os << " (reg)<=>" << tri_name(*rep.conditions.cross_reg);
        os << (rep.conditions.cross_consistent ? "  consistent" : "  INCONSISTENT") << "\n";
    }
    if (!rep.slopes_computed) {
        os << "slopes: skipped (conditions not certified)\n";
        return os.str();
    }
    os << "slopes: " << rep.slopes.slopes.size() << " of expected " << rep.slopes.q_degree << "\n";
    int idx = 0;
    for (const auto& s : rep.slopes.slopes) {
        os << "  slope[" << idx++ << "] = " << format_quadext(s.slope)
           << (s.slope_exact ? "  (= " + format_quadrational(*s.slope_exact) + ")" : "")
           << "  mult " << s.multiplicity << (s.certified_simple ? " simple" : " UNRESOLVED") << "\n";
        if (s.tx_defined) {
            os << "    t = " << format_quadext(s.t)
               << (s.t_exact ? "  (= " + format_quadrational(*s.t_exact) + ")" : "") << "\n";
            os << "    x = " << format_quadext(s.x)
               << (s.x_exact ? "  (= " + format_quadrational(*s.x_exact) + ")" : "") << "\n";
            os << "    z = " << (s.z_infinite ? std::string("inf") : format_quadext(s.z))
               << (s.z_exact ? "  (= " + format_quadrational(*s.z_exact) + ")" : "") << "\n";
            os << "    L_GS = -2t = " << format_quadext(s.gs_l_invariant) << "\n";
        } else {
            os << "    P_L(s) = 0: x, t undefined; c-slope = inf\n";
        }
        os << "    dim Sel(ad0) = " << s.dims.ad0 << ", dim Sel(ad) = " << s.dims.ad
           << (s.dims.exact ? " (exact)" : "") << ", (S_V+) " << tri_name(s.cond_S) << "\n";
    }
    if (rep.gross) {
        os << "Gross regulator = " << format_padic(rep.gross->regulator) << "\n";
        os << "intro condition value = " << format_padic(rep.gross->intro_condition) << "\n";
    }
    if (rep.cm) {
        os << "S_phi = " << format_padic(rep.cm->S_phi) << ", L_p = " << format_padic(rep.cm->L_p)
           << "\n";
        os << "L-(phi) = " << format_padic(rep.cm->L_minus_phi)
           << ", L-(phibar) = " << format_padic(rep.cm->L_minus_phibar) << "\n";
    }
    if (rep.cotangent) {
        os << "cotangent certificate: g-rank " << rep.cotangent->g_rank << " (rank3 "
           << (rep.cotangent->rank3 ? "ok" : "FAILED") << "), a_l-only rank "
           << rep.cotangent->al_only_rank << ", span dimension " << rep.cotangent->span_dimension
           << "\n";
        os << "first-order structure map (T_n - a_n) -> (b1, b2, b3):\n";
        for (const auto& [n, coords] : rep.cotangent->structure_map)
            os << "  n = " << n << ": [" << format_quadext(coords[0]) << ", "
               << format_quadext(coords[1]) << ", " << format_quadext(coords[2]) << "]\n";
    } else if (!rep.cotangent_error.empty()) {
        os << "cotangent certificate unavailable: " << rep.cotangent_error << "\n";
    }
    return os.str();
}

} // namespace padicreg
