#pragma once

// Independent ground truth for the Ricci computation: sp(n,C) and so(2n,C)
// realized as explicit 2n x 2n matrices, a Weyl-normalized root-vector basis
// kept exact as (rational matrix)/sqrt(radicand) pairs, and the standard
// reductive homogeneous-space Ricci formula
//
//   Ric(X,X) = -1/2 sum_i |[X,e_i]_m|_g^2 - 1/2 B(X,X)
//              + 1/4 sum_{i,j} g([e_i,e_j]_m, X)^2
//
// evaluated on the g-orthonormal basis e = { A_b/sqrt(2l), S_b/sqrt(2l) }.
// Nothing here touches root strings or the structure-constant formula.

#include <array>
#include <complex>
#include <unordered_map>
#include <vector>

#include "flagein/flag.hpp"
#include "flagein/rational.hpp"
#include "flagein/ricci.hpp"
#include "flagein/roots.hpp"

namespace flagein {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// m / sqrt(radicand) with m rational.
struct ScaledMatrix {
    RationalMatrix m;
    long long radicand = 1;
};

class MatrixRealization {
public:
    /// n <= 8 enforced (dense desk-scale oracle).
    static MatrixRealization build(const RootFamily& fam);

    const RootFamily& family() const { return fam_; }
    int ambient_dim() const { return 2 * fam_.rank; }
    Rational trace_factor() const { return trace_factor_; }

    const ScaledMatrix& root_vector(const Root& r) const;
    /// Diagonal entries (a_1..a_n) of the k-th Cartan basis element
    /// diag(a, -a); here simply the unit vector e_k.
    RationalMatrix cartan(int k) const;

    /// B(X_a, X_b), exact. Nonzero only for b = -a, where it must be 1.
    Rational killing_pair(const Root& a, const Root& b) const;

    /// Squared coefficient of X_{a+b} in [X_a, X_b] (0 when a+b is no root);
    /// exact rational, computed from matrix brackets alone.
    Rational bracket_coefficient_sq(const Root& a, const Root& b) const;

    /// [H, X_a] = a(H) X_a for every Cartan basis element, exactly.
    bool eigenvector_property_holds() const;

    /// [X_a, X_-a] equals the Riesz element H_a with B(X, H_a) = a(X).
    bool riesz_bracket_holds(const Root& a) const;

private:
    RootFamily fam_{Family::C, 2};
    Rational trace_factor_;
    std::unordered_map<std::int64_t, ScaledMatrix> vectors_;
    std::vector<Root> roots_;
};

/// Per-descriptor evaluator; precomputes the bracket component tensor once.
class OracleEvaluator {
public:
    explicit OracleEvaluator(const Flag& flag);

    /// Ric(X_alpha, X_-alpha) via the homogeneous-space formula, scaled by
    /// the convention Ric(X_a, X_-a) = Ric(A_a, A_a)/2.
    double ricci(const InvariantMetric& metric, const Root& alpha) const;

private:
    const Flag& flag_;
    int basis_size_ = 0;
    std::vector<int> summand_of_basis_;                  // lambda lookup per basis vector
    std::unordered_map<std::int64_t, int> index_of_root_;  // positive root -> A index
    struct Entry {
        int k;
        double t;
    };
    std::vector<std::vector<Entry>> t_rows_;   // (i*b+j) -> entries over k
    std::vector<std::vector<std::array<int, 2>>> pairs_by_k_;  // k -> (i,j) with T != 0
    std::vector<std::vector<double>> t_by_k_;  // aligned values
};

/// One-shot convenience wrapper around OracleEvaluator.
double oracle_ricci(const Flag& flag, const InvariantMetric& metric, const Root& alpha);

}  // namespace flagein
