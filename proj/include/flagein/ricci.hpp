#pragma once

// Ricci components of an invariant metric, evaluated per root through the
// structure-constant formula
//
//   Ric(X_a, X_-a) = B(a,a) + sum_{phi in R_Theta(a)} N^2_{a,phi}
//                  + 1/4 sum_{b in R_M(a)} N^2_{a,b} / (l_{a+b} l_b)
//                                          * (l_a^2 - (l_{a+b} - l_b)^2),
//
// plus the aggregate report: per-summand ratios, Einstein-constant estimate,
// scalar curvature, volume and the scale invariant H = V^{1/d} S.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "flagein/flag.hpp"
#include "flagein/rational.hpp"

namespace flagein {

/// One positive parameter per positive t-root, measured against -B.
class InvariantMetric {
public:
    static InvariantMetric ones(const Flag& flag);
    static InvariantMetric from_values(const Flag& flag, std::vector<double> by_summand);
    /// Keys are t-root strings; must cover every summand exactly once.
    static InvariantMetric from_map(const Flag& flag, const std::map<std::string, double>& values);

    double lambda(int summand_idx) const { return values_[summand_idx]; }
    double lambda_of_root(const Flag& flag, const Root& alpha) const {
        return values_[flag.summand_index(alpha)];
    }
    const std::vector<double>& values() const { return values_; }
    InvariantMetric scaled(double kappa) const;
    std::map<std::string, double> to_map(const Flag& flag) const;

private:
    explicit InvariantMetric(std::vector<double> v) : values_(std::move(v)) {}
    std::vector<double> values_;
};

/// Ric(X_alpha, X_-alpha) for alpha in R_M.
double ricci_component(const Flag& flag, const InvariantMetric& metric, const Root& alpha);

/// Same formula over exact rationals (lambdas indexed by summand).
Rational ricci_component_exact(const Flag& flag, const std::vector<Rational>& lambdas,
                               const Root& alpha);

struct SummandRicci {
    std::string key;
    double lambda = 0;
    double ric = 0;    // Ric(X_a, X_-a) for a fiber representative
    double ratio = 0;  // ric / lambda
    int dim = 0;
};

struct RicciReport {
    std::vector<SummandRicci> summands;
    double c_estimate = 0;         // plain mean of the ratios
    double residual = 0;           // max_i |ric_i - c_estimate * lambda_i|
    double scalar_curvature = 0;   // sum d_i ratio_i
    double volume = 0;             // prod lambda_i^{d_i}  (normal metric = 1)
    double h_invariant = 0;        // volume^{1/d} * scalar_curvature
    nlohmann::json to_json() const;
};

/// check_representatives recomputes every fiber root and requires agreement
/// to 1e-12 relative.
RicciReport ricci_report(const Flag& flag, const InvariantMetric& metric,
                         bool check_representatives = false);

}  // namespace flagein
