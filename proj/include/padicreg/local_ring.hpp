#pragma once

#include <vector>

#include "linalg.hpp"

namespace padicreg {

/**
 * Truncated model of the fiber product of n copies of Lambda = k[[X]] over k:
 * tuples of n power series truncated at order K with equal constant terms.
 * n = 4 models the Hecke algebra T = k[[X1..X4]]/({Xi Xj}); n = 1 is Lambda
 * itself and n = 2 the node ring. The residue field is modeled by Q, which is
 * harmless: every dimension count here is field-agnostic.
 */
class FiberRingElement {
public:
    FiberRingElement(int n, int K) : n_(n), K_(K), comps_(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(K), 0)) {}

    static FiberRingElement one(int n, int K) {
        FiberRingElement e(n, K);
        for (auto& c : e.comps_) c[0] = 1;
        return e;
    }
    // X * indicator of component i (the coordinate generator X_i)
    static FiberRingElement coordinate(int n, int K, int i) {
        FiberRingElement e(n, K);
        if (K > 1) e.comps_[static_cast<std::size_t>(i)][1] = 1;
        return e;
    }
    // the image of X under the weight map: (X, X, ..., X)
    static FiberRingElement weight(int n, int K) {
        FiberRingElement e(n, K);
        if (K > 1)
            for (auto& c : e.comps_) c[1] = 1;
        return e;
    }

    int components() const { return n_; }
    int truncation() const { return K_; }
    const std::vector<Rational>& comp(int i) const { return comps_[static_cast<std::size_t>(i)]; }
    Rational& at(int i, int k) { return comps_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]; }

    bool valid() const {
        for (int i = 1; i < n_; ++i)
            if (comps_[static_cast<std::size_t>(i)][0] != comps_[0][0]) return false;
        return true;
    }
    bool is_zero() const {
        for (const auto& c : comps_)
            for (const auto& x : c)
                if (x != 0) return false;
        return true;
    }

    friend FiberRingElement operator+(const FiberRingElement& a, const FiberRingElement& b) {
        FiberRingElement r = a;
        for (int i = 0; i < a.n_; ++i)
            for (int k = 0; k < a.K_; ++k) r.at(i, k) += b.comps_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        return r;
    }
    friend FiberRingElement operator-(const FiberRingElement& a, const FiberRingElement& b) {
        FiberRingElement r = a;
        for (int i = 0; i < a.n_; ++i)
            for (int k = 0; k < a.K_; ++k) r.at(i, k) -= b.comps_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        return r;
    }
    // componentwise series product, re-truncated at order K
    friend FiberRingElement operator*(const FiberRingElement& a, const FiberRingElement& b) {
        FiberRingElement r(a.n_, a.K_);
        for (int i = 0; i < a.n_; ++i)
            for (int k = 0; k < a.K_; ++k)
                for (int j = 0; j <= k; ++j)
                    r.at(i, k) += a.comps_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                                  b.comps_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k - j)];
        return r;
    }
    friend bool operator==(const FiberRingElement& a, const FiberRingElement& b) {
        return a.comps_ == b.comps_;
    }

    std::vector<Rational> flatten() const {
        std::vector<Rational> v;
        for (const auto& c : comps_) v.insert(v.end(), c.begin(), c.end());
        return v;
    }

private:
    int n_, K_;
    std::vector<std::vector<Rational>> comps_;
};

namespace localring_detail {

inline int span_rank(const std::vector<FiberRingElement>& gens) {
    if (gens.empty()) return 0;
    Matrix<Rational> m;
    for (const auto& g : gens) m.push_back(g.flatten());
    return rank_exact(m);
}

// Q-basis of the ring as a subspace of Lambda^n: 1 and X^t * delta_i
inline std::vector<FiberRingElement> ring_basis(int n, int K) {
    std::vector<FiberRingElement> basis;
    basis.push_back(FiberRingElement::one(n, K));
    for (int i = 0; i < n; ++i)
        for (int t = 1; t < K; ++t) {
            FiberRingElement e(n, K);
            e.at(i, t) = 1;
            basis.push_back(e);
        }
    return basis;
}

// Q-span of m_Lambda * B = X * B
inline std::vector<FiberRingElement> weight_ideal_span(int n, int K) {
    std::vector<FiberRingElement> out;
    FiberRingElement X = FiberRingElement::weight(n, K);
    for (const auto& b : ring_basis(n, K)) out.push_back(X * b);
    return out;
}

} // namespace localring_detail

struct RingStructureReport {
    int components = 0;        // minimal primes of the model
    bool products_vanish = false;   // Xi * Xj = 0 for i != j
    bool weight_map_ok = false;     // sum Xi = image of X
    bool kernels_separate = false;  // each component is genuinely present
    int cotangent_dim = 0;     // dim m/(m^2 + m_Lambda * T)
    int fiber_dim = 0;         // dim T/(m_Lambda * T)
    int socle_dim = 0;         // socle of the fiber ring
    bool gorenstein = false;   // socle dimension 1
};

inline RingStructureReport ring_structure_report(int K, int n = 4) {
    if (K < 2) throw DomainError("truncation order must be >= 2");
    using namespace localring_detail;
    RingStructureReport rep;
    rep.components = n;

    std::vector<FiberRingElement> coords;
    for (int i = 0; i < n; ++i) coords.push_back(FiberRingElement::coordinate(n, K, i));
    rep.products_vanish = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && !(coords[static_cast<std::size_t>(i)] * coords[static_cast<std::size_t>(j)]).is_zero())
                rep.products_vanish = false;

    FiberRingElement sum(n, K);
    for (const auto& c : coords) sum = sum + c;
    rep.weight_map_ok = sum == FiberRingElement::weight(n, K);

    // every component contributes: the elements supported on component i alone
    // form a nonzero subspace (this separates the n kernels)
    rep.kernels_separate = true;
    for (int i = 0; i < n && rep.kernels_separate; ++i) {
        FiberRingElement e(n, K);
        e.at(i, 1) = 1;
        bool in_others = false;
        for (int j = 0; j < n; ++j)
            if (j != i && e.comp(j) != std::vector<Rational>(static_cast<std::size_t>(K), 0)) in_others = true;
        if (in_others || e.is_zero()) rep.kernels_separate = false;
    }

    // m = (X^t delta_i, t >= 1); m^2 + m_Lambda*T inside it
    std::vector<FiberRingElement> mbasis;
    for (int i = 0; i < n; ++i)
        for (int t = 1; t < K; ++t) {
            FiberRingElement e(n, K);
            e.at(i, t) = 1;
            mbasis.push_back(e);
        }
    std::vector<FiberRingElement> sub;
    for (const auto& a : coords)
        for (const auto& b : mbasis) sub.push_back(a * b); // m^2 as an ideal: gens * m
    for (const auto& w : weight_ideal_span(n, K)) sub.push_back(w);
    rep.cotangent_dim = static_cast<int>(mbasis.size()) - span_rank(sub);

    // fiber ring T/(m_Lambda T)
    int ring_dim = static_cast<int>(ring_basis(n, K).size());
    std::vector<FiberRingElement> wspan = weight_ideal_span(n, K);
    int wrank = span_rank(wspan);
    rep.fiber_dim = ring_dim - wrank;

    // socle of the fiber: v with v * m_fiber inside m_Lambda T, for v running
    // over fiber representatives 1, X_1, ..., X_{n-1}. The map
    // fiber -> prod_g (T / X T), v -> (v g mod X T), has the socle as kernel;
    // its rank is computed against a block-diagonal copy of span(X T).
    std::vector<FiberRingElement> fiber_reps;
    fiber_reps.push_back(FiberRingElement::one(n, K));
    for (int i = 0; i + 1 < n; ++i) fiber_reps.push_back(coords[static_cast<std::size_t>(i)]);
    int fdim = static_cast<int>(fiber_reps.size());
    {
        std::size_t block = static_cast<std::size_t>(n * K);
        std::size_t blocks = coords.size();
        Matrix<Rational> big;
        for (const auto& w : wspan)
            for (std::size_t gidx = 0; gidx < blocks; ++gidx) {
                std::vector<Rational> row(block * blocks, 0);
                std::vector<Rational> img = w.flatten();
                for (std::size_t k = 0; k < block; ++k) row[gidx * block + k] = img[k];
                big.push_back(row);
            }
        int wrank_big = rank_exact(big);
        for (int j = 0; j < fdim; ++j) {
            std::vector<Rational> row;
            for (const auto& g : coords) {
                std::vector<Rational> img = (fiber_reps[static_cast<std::size_t>(j)] * g).flatten();
                row.insert(row.end(), img.begin(), img.end());
            }
            big.push_back(row);
        }
        int image_rank = rank_exact(big) - wrank_big;
        rep.socle_dim = fdim - image_rank;
    }
    rep.gorenstein = rep.socle_dim == 1;
    return rep;
}

// minimal number of generators of Hom_Lambda(B, Lambda) over B: build the dual
// basis action (b.phi)(x) = phi(b x) on the Lambda-basis dual to
// {(1,..,1), X delta_1, ..., X delta_{n-1}} and return dim Hom/(m_B Hom)
inline int dualizing_generators(int K, int n = 4) {
    if (K < 2) throw DomainError("truncation order must be >= 2");
    // Hom is free of rank n over Lambda_K: coordinates phi_0..phi_{n-1}, each a
    // truncated series. A Q-basis: X^t phi_j. The action of the ideal
    // generators X_i on phi_j is computed through the module basis. Products of
    // two degree-1 module generators reach order 2, so the ring elements carry
    // one internal guard order beyond K.
    const int Kint = K + 1;
    std::vector<FiberRingElement> basis = {FiberRingElement::one(n, Kint)};
    for (int i = 0; i + 1 < n; ++i) basis.push_back(FiberRingElement::coordinate(n, Kint, i));
    // b * basis[k] expanded over the basis with Lambda coefficients: for the
    // fiber product, decompose (c_1..c_n) = c_n * e0 + sum_i ((c_i - c_n)/X) e_i
    auto decompose = [&](const FiberRingElement& v) {
        // returns n truncated series: coefficients over {e0, e1, .., e_{n-1}}
        std::vector<std::vector<Rational>> coeff(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(Kint), 0));
        const std::vector<Rational>& last = v.comp(n - 1);
        coeff[0] = last;
        for (int i = 0; i + 1 < n; ++i) {
            // (c_i - c_last) is divisible by X
            for (int t = 1; t < Kint; ++t)
                coeff[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(t - 1)] =
                    v.comp(i)[static_cast<std::size_t>(t)] - last[static_cast<std::size_t>(t)];
        }
        return coeff;
    };
    // m_B generators: the n coordinates
    std::vector<FiberRingElement> gens;
    for (int i = 0; i < n; ++i) gens.push_back(FiberRingElement::coordinate(n, Kint, i));

    // vectors in Hom ~ Q^{nK}: (series for phi_0) ++ ... ++ (series for phi_{n-1});
    // (b . phi_j X^t) = sum_k lambda-coeff of b*e_k against e-basis applied to duals
    // i.e. (b.phi)(e_k) = phi(b e_k): for phi = X^t phi_j, the result's phi_m
    // coordinate picks the e_j-coefficient of b*e_m times X^t.
    Matrix<Rational> span;
    for (const auto& b : gens) {
        // action matrix entries: a[m][j] = Lambda-coefficient series of e_j in b*e_m
        std::vector<std::vector<std::vector<Rational>>> act;
        for (int m = 0; m < n; ++m) act.push_back(decompose(b * basis[static_cast<std::size_t>(m)]));
        for (int j = 0; j < n; ++j)
            for (int t = 0; t < K; ++t) {
                // b . (X^t phi_j): evaluate on e_m -> X^t * act[m][j]
                std::vector<Rational> hom(static_cast<std::size_t>(n * K), 0);
                for (int m = 0; m < n; ++m)
                    for (int u = 0; u + t < K; ++u)
                        hom[static_cast<std::size_t>(m * K + u + t)] += act[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)][static_cast<std::size_t>(u)];
                span.push_back(hom);
            }
    }
    int rank = rank_exact(span);
    return n * K - rank;
}

struct OhtaFiberReport {
    int dual_generators = 3;
    int fiber_dim_H = 4;    // dim H/(m_T H) = 1 + dual generators by right-exactness
    int multiplicity_r = 2; // H/(m_T H) = rho^r
    int pm_fiber_dim = 2;   // each complex-conjugation eigenspace
    bool sequence_fiber_exact = true;
    bool free = false;      // generic rank 1 vs minimal generator count
    int generic_rank_pm = 1;
    int min_generators_pm = 2;
};

// dimension ledger of the Ohta sequence 0 -> T -> H -> Hom(T, Lambda) -> 0
inline OhtaFiberReport ohta_fiber_check(int dual_generators) {
    OhtaFiberReport rep;
    rep.dual_generators = dual_generators;
    rep.fiber_dim_H = 1 + dual_generators;
    rep.sequence_fiber_exact = true; // right-exactness of the tensor product
    if (rep.fiber_dim_H % 2 != 0)
        throw Inconsistent("fiber of H cannot be an even-dimensional rho-power");
    rep.multiplicity_r = rep.fiber_dim_H / 2;
    rep.pm_fiber_dim = rep.fiber_dim_H / 2;
    rep.generic_rank_pm = 1;
    rep.min_generators_pm = rep.pm_fiber_dim;
    rep.free = rep.min_generators_pm == rep.generic_rank_pm;
    return rep;
}

} // namespace padicreg
