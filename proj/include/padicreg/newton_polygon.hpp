#pragma once

#include <vector>

#include "unipoly.hpp"

namespace padicreg {

/**
 * Lower convex hull of the coefficient valuation cloud. Slopes are reported
 * as root valuations (the negated hull slopes): a slope lambda of length m
 * certifies m roots of valuation lambda in the algebraic closure.
 */
struct NewtonPolygon {
    std::vector<std::pair<int, long>> vertices;      // (degree index, valuation)
    std::vector<std::pair<Rational, int>> slopes;    // (root valuation, length), increasing
};

inline NewtonPolygon newton_polygon(const UniPoly<PadicNumber>& f) {
    struct Pt {
        int i;
        long v;
        bool usable; // certified valuation (Regular); inexact zeros give only a lower bound
    };
    std::vector<Pt> pts;
    for (int i = 0; i <= f.formal_degree; ++i) {
        const PadicNumber& c = f.c[static_cast<std::size_t>(i)];
        if (c.is_exact_zero()) continue;
        pts.push_back({i, c.valuation_bound(), c.is_certified_nonzero()});
    }
    {
        int usable = 0;
        for (const auto& p : pts) usable += p.usable;
        if (usable < 2) throw PrecisionError("newton polygon needs two coefficients with certified valuations");
    }
    // monotone lower hull over certified points
    std::vector<Pt> hull;
    for (const auto& p : pts) {
        if (!p.usable) continue;
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull[hull.size() - 1];
            // b above or on segment a-p: (b.v - a.v)*(p.i - a.i) >= (p.v - a.v)*(b.i - a.i)
            if (static_cast<long long>(b.v - a.v) * (p.i - a.i) >=
                static_cast<long long>(p.v - a.v) * (b.i - a.i))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    // an inexact-zero coefficient whose precision cap does not clear the hull
    // could change it; refuse rather than guess
    for (const auto& p : pts) {
        if (p.usable) continue;
        if (p.i < hull.front().i || p.i > hull.back().i)
            throw PrecisionError("newton polygon: boundary coefficient indistinguishable from zero");
        for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
            const Pt& a = hull[k];
            const Pt& b = hull[k + 1];
            if (p.i < a.i || p.i > b.i) continue;
            // hull height at p.i times (b.i - a.i)
            long long lhs = static_cast<long long>(p.v) * (b.i - a.i);
            long long rhs = static_cast<long long>(a.v) * (b.i - p.i) +
                            static_cast<long long>(b.v) * (p.i - a.i);
            if (lhs <= rhs)
                throw PrecisionError("newton polygon: coefficient indistinguishable from zero at a "
                                     "position needed for the hull");
        }
    }
    NewtonPolygon np;
    for (const auto& h : hull) np.vertices.emplace_back(h.i, h.v);
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        Rational slope(Int(hull[k].v - hull[k + 1].v), Int(hull[k + 1].i - hull[k].i));
        np.slopes.emplace_back(slope, hull[k + 1].i - hull[k].i);
    }
    std::sort(np.slopes.begin(), np.slopes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return np;
}

} // namespace padicreg
