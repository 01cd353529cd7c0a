#pragma once

#include <vector>

#include "padic_functions.hpp"
#include "quadrational.hpp"

namespace padicreg {

// Scalar interface for certified elimination. Doubled valuations keep the
// ramified quadratic extensions in integer arithmetic.
namespace cert {

inline bool exact_zero(const PadicNumber& x) { return x.is_exact_zero(); }
inline bool nonzero(const PadicNumber& x) { return x.is_certified_nonzero(); }
inline long val2(const PadicNumber& x) { return 2 * x.valuation(); }

inline bool exact_zero(const QuadExtElement& x) { return x.is_exact_zero(); }
inline bool nonzero(const QuadExtElement& x) { return x.is_certified_nonzero(); }
inline long val2(const QuadExtElement& x) { return x.val2(); }

} // namespace cert

/**
 * Rank of a matrix over Q_p (or a quadratic extension) with certified pivoting:
 * pivots are chosen by minimal valuation among entries certified nonzero. A
 * column whose remaining entries cannot be certified either way aborts with
 * RankUndecidable instead of guessing.
 */
template <class T>
int rank_certified(Matrix<T> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t row = 0;
    int rank = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = rows;
        long best = 0;
        bool have_fuzzy = false;
        for (std::size_t i = row; i < rows; ++i) {
            const T& x = m[i][col];
            if (cert::exact_zero(x)) continue;
            if (!cert::nonzero(x)) {
                have_fuzzy = true;
                continue;
            }
            long v = cert::val2(x);
            if (pivot == rows || v < best) {
                pivot = i;
                best = v;
            }
        }
        if (pivot == rows) {
            if (have_fuzzy)
                throw RankUndecidable("pivot column " + std::to_string(col) +
                                      " has entries indistinguishable from zero");
            continue; // certified zero column
        }
        std::swap(m[row], m[pivot]);
        for (std::size_t i = row + 1; i < rows; ++i) {
            const T& x = m[i][col];
            if (cert::exact_zero(x)) continue;
            T factor = x / m[row][col];
            for (std::size_t j = col; j < cols; ++j)
                m[i][j] = m[i][j] - factor * m[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

// plain Gaussian elimination over an exact field (Rational or QuadRational)
template <class F>
int rank_exact(Matrix<F> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t row = 0;
    int rank = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = rows;
        for (std::size_t i = row; i < rows; ++i)
            if (!RingTraits<F>::is_exact_zero(m[i][col])) {
                pivot = i;
                break;
            }
        if (pivot == rows) continue;
        std::swap(m[row], m[pivot]);
        for (std::size_t i = row + 1; i < rows; ++i) {
            if (RingTraits<F>::is_exact_zero(m[i][col])) continue;
            F factor = m[i][col] / m[row][col];
            for (std::size_t j = col; j < cols; ++j)
                m[i][j] = m[i][j] - factor * m[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

} // namespace padicreg
