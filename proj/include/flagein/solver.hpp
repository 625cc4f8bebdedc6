#pragma once

// Multistart damped Newton over the assembled (or ansatz-reduced) Einstein
// systems: deterministic seeded starts, positivity filtering, deduplication,
// and the non-isometry classification through Einstein constants and the
// scale invariant H.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flagein/einstein.hpp"
#include "flagein/flag.hpp"
#include "flagein/quadfield.hpp"
#include "flagein/ricci.hpp"

namespace flagein {

struct SolveConfig {
    enum class Normalization { first_lambda_one, unit_volume };
    Normalization normalization = Normalization::first_lambda_one;
    int starts = 64;
    double grid_lo = 0.1;
    double grid_hi = 4.0;
    double tol = 1e-12;        // relative equation residual accepted as solved
    double dedup_tol = 1e-8;   // sup distance identifying two solutions
    std::uint64_t seed = 20240801;
    int max_iter = 200;
    int threads = 0;           // 0: FLAGEIN_THREADS env or hardware default

    void validate() const;
};

struct SolutionRecord {
    std::map<std::string, double> lambdas;  // by t-root key
    double c = 0;                    // Einstein-constant estimate
    double residual = 0;             // max |ric_i - c lambda_i|
    double h_invariant = 0;
    double volume_normalized_c = 0;  // c of the volume-1 rescaling
    std::string source = "numeric";  // numeric | closed_form | reference
    std::vector<std::string> annotations;
    std::string family;
    std::vector<int> partition;

    nlohmann::json to_json() const;
};

struct NewtonOutcome {
    bool ok = false;
    std::string reason;       // converged | singular_jacobian | diverged | ...
    std::vector<double> x;    // var order of the system, c last
    double residual = 0;      // relative residual sup-norm
    int iterations = 0;
};

/// Damped Newton (Gauss-Newton on overdetermined systems) on the relative
/// residuals of the polynomial equations. When no variable is pinned the
/// system has the common scaling freedom and `normalization` appends one
/// more equation; unit_volume uses sum d_i log lambda_i = 0.
NewtonOutcome newton_polish(const PolySystem& sys, std::vector<double> x0, double tol,
                            int max_iter = 200,
                            std::optional<SolveConfig::Normalization> normalization = std::nullopt,
                            const std::vector<double>* norm_weights = nullptr);

std::vector<SolutionRecord> multistart_solve(const Flag& flag, const std::optional<Ansatz>& ansatz,
                                             const SolveConfig& config);

/// Pairwise matrix: "non-isometric" when the volume-normalized Einstein
/// constants or the H invariants differ by more than 1e-8, else
/// "undetermined".
std::vector<std::vector<std::string>> classify_solutions(const Flag& flag,
                                                         const std::vector<SolutionRecord>& records);

/// Wraps a given metric as a record (Einstein or not), via ricci_report.
SolutionRecord evaluate_candidate(const Flag& flag, const InvariantMetric& metric,
                                  const std::string& source);

/// Relative residual of every equation at a point: |P(x)| divided by the sum
/// of its term magnitudes.
std::vector<double> system_residuals(const PolySystem& sys, const std::vector<double>& x);

/// Assembles the point (lambda values by t-root key, then c) in the variable
/// order of the system, through its bindings.
std::vector<double> bind_point(const PolySystem& sys, const std::map<std::string, double>& lambdas,
                               double c);

/// Closed-form equal-block candidates (f = g = 1, h as below) from the
/// published formulas for Sp(n)/U(m)^s and SO(2n)/U(m)^s; empty when the
/// discriminant is negative.
struct ReferenceSolution {
    QuadValue h;
    QuadValue c;
};
std::vector<ReferenceSolution> reference_equal_block_metrics(Family fam, int n, int m);

struct AdjudicationEntry {
    std::string label;
    std::map<std::string, double> lambdas;
    double c_estimate = 0;
    double ricci_residual = 0;    // via ricci_report
    double system_residual = 0;   // relative residual of the full polynomial system
    bool einstein_by_ricci = false;
    bool einstein_by_system = false;
};

struct AdjudicationReport {
    std::vector<AdjudicationEntry> candidates;
    std::vector<SolutionRecord> numeric;
    std::vector<std::vector<std::string>> classification;
    double threshold = 1e-9;
    bool consistent = false;  // the two residual routes classify identically
                              // and every numeric record re-verifies
    nlohmann::json to_json() const;
};

/// Evaluates candidate metrics against the full assembled system, runs
/// multistart under the ansatz, and reports both, with the consistency
/// cross-check between the polynomial and ricci evaluation routes.
AdjudicationReport adjudicate(const Flag& flag, const std::optional<Ansatz>& ansatz,
                              const std::vector<std::pair<std::string, InvariantMetric>>& candidates,
                              const SolveConfig& config, double threshold = 1e-9);

/// Deterministic 64-bit generator used for start points (and test inputs).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double uniform01();
    double log_uniform(double lo, double hi);

private:
    std::uint64_t state_;
};

}  // namespace flagein
