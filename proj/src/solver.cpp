#include "flagein/solver.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace flagein {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double SplitMix64::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::log_uniform(double lo, double hi) {
    return lo * std::exp(uniform01() * std::log(hi / lo));
}

void SolveConfig::validate() const {
    if (!(grid_lo > 0) || !(grid_hi > grid_lo))
        throw std::invalid_argument("grid bounds must satisfy 0 < lo < hi");
    if (!(tol > 0) || !(dedup_tol > tol))
        throw std::invalid_argument("config needs 0 < tol < dedup_tol");
    if (starts <= 0) throw std::invalid_argument("starts must be positive");
}

namespace {

// ---- small dense least squares via Householder QR --------------------------

// Solves min |A x - b| for A (rows x cols, rows >= cols), in place.
// Returns false when A is numerically rank deficient.
bool qr_least_squares(std::vector<double> a, std::vector<double> b, int rows, int cols,
                      std::vector<double>& x) {
    const double tiny = 1e-13;
    double maxcol = 0;
    for (int j = 0; j < cols; ++j) {
        double s = 0;
        for (int i = 0; i < rows; ++i) s += a[i * cols + j] * a[i * cols + j];
        maxcol = std::max(maxcol, std::sqrt(s));
    }
    if (maxcol == 0) return false;
    for (int k = 0; k < cols; ++k) {
        double norm = 0;
        for (int i = k; i < rows; ++i) norm += a[i * cols + k] * a[i * cols + k];
        norm = std::sqrt(norm);
        if (norm < tiny * maxcol) return false;
        if (a[k * cols + k] > 0) norm = -norm;
        // Householder vector v = col - norm*e_k, stored in place
        double vkk = a[k * cols + k] - norm;
        std::vector<double> v(rows - k);
        v[0] = vkk;
        for (int i = k + 1; i < rows; ++i) v[i - k] = a[i * cols + k];
        double vtv = 0;
        for (double t : v) vtv += t * t;
        if (vtv == 0) return false;
        a[k * cols + k] = norm;
        for (int i = k + 1; i < rows; ++i) a[i * cols + k] = 0;
        for (int j = k + 1; j < cols; ++j) {
            double dot = 0;
            for (int i = k; i < rows; ++i) dot += v[i - k] * a[i * cols + j];
            double f = 2.0 * dot / vtv;
            for (int i = k; i < rows; ++i) a[i * cols + j] -= f * v[i - k];
        }
        double dotb = 0;
        for (int i = k; i < rows; ++i) dotb += v[i - k] * b[i];
        double fb = 2.0 * dotb / vtv;
        for (int i = k; i < rows; ++i) b[i] -= fb * v[i - k];
    }
    x.assign(cols, 0.0);
    for (int k = cols - 1; k >= 0; --k) {
        double s = b[k];
        for (int j = k + 1; j < cols; ++j) s -= a[k * cols + j] * x[j];
        double d = a[k * cols + k];
        if (std::abs(d) < tiny * maxcol) return false;
        x[k] = s / d;
    }
    return true;
}

// ---- residual system with per-equation relative scaling --------------------

// flattened polynomial for the Newton inner loops
struct CompiledPoly {
    struct Term {
        double c;
        std::vector<std::pair<int, int>> pows;  // (var, exponent)
    };
    std::vector<Term> terms;

    static CompiledPoly from(const Polynomial& p) {
        CompiledPoly out;
        for (const auto& [m, c] : p.terms()) {
            Term t;
            t.c = c.to_double();
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] != 0) t.pows.emplace_back(static_cast<int>(i), m[i]);
            out.terms.push_back(std::move(t));
        }
        return out;
    }

    double eval(const std::vector<double>& x) const {
        double sum = 0;
        for (const Term& t : terms) {
            double v = t.c;
            for (const auto& [var, e] : t.pows) {
                double b = x[var];
                for (int k = 0; k < e; ++k) v *= b;
            }
            sum += v;
        }
        return sum;
    }

    // (value, sum of |term| magnitudes)
    std::pair<double, double> eval_with_scale(const std::vector<double>& x) const {
        double sum = 0, scale = 0;
        for (const Term& t : terms) {
            double v = t.c;
            for (const auto& [var, e] : t.pows) {
                double b = x[var];
                for (int k = 0; k < e; ++k) v *= b;
            }
            sum += v;
            scale += std::abs(v);
        }
        return {sum, std::max(scale, 1e-30)};
    }
};

struct ResidualSystem {
    const PolySystem* sys = nullptr;
    std::vector<CompiledPoly> equations;
    std::vector<std::vector<CompiledPoly>> gradients;  // per equation, per var
    std::optional<SolveConfig::Normalization> normalization;
    std::vector<double> norm_weights;  // d_i per lambda var for unit_volume

    int nvars() const { return static_cast<int>(sys->vars.size()); }
    int nres() const {
        return static_cast<int>(sys->equations.size()) + (normalization ? 1 : 0);
    }

    void residuals(const std::vector<double>& x, std::vector<double>& f,
                   std::vector<double>* scales = nullptr) const {
        f.resize(nres());
        if (scales) scales->resize(equations.size());
        for (std::size_t e = 0; e < equations.size(); ++e) {
            auto [value, scale] = equations[e].eval_with_scale(x);
            f[e] = value / scale;
            if (scales) (*scales)[e] = scale;
        }
        if (normalization) {
            if (*normalization == SolveConfig::Normalization::first_lambda_one) {
                f[equations.size()] = x[0] - 1.0;
            } else {
                double logv = 0;
                for (int i = 0; i < static_cast<int>(norm_weights.size()); ++i)
                    logv += norm_weights[i] * std::log(x[i]);
                f[equations.size()] = logv;
            }
        }
    }

    void jacobian(const std::vector<double>& x, const std::vector<double>& scales,
                  std::vector<double>& jac) const {
        const int k = nvars();
        jac.assign(static_cast<std::size_t>(nres()) * k, 0.0);
        for (std::size_t e = 0; e < equations.size(); ++e)
            for (int v = 0; v < k; ++v) jac[e * k + v] = gradients[e][v].eval(x) / scales[e];
        if (normalization) {
            std::size_t row = equations.size();
            if (*normalization == SolveConfig::Normalization::first_lambda_one) {
                jac[row * k + 0] = 1.0;
            } else {
                for (int i = 0; i < static_cast<int>(norm_weights.size()); ++i)
                    jac[row * k + i] = norm_weights[i] / x[i];
            }
        }
    }
};

ResidualSystem make_residual_system(const PolySystem& sys,
                                    std::optional<SolveConfig::Normalization> normalization,
                                    const std::vector<double>* norm_weights) {
    ResidualSystem rs;
    rs.sys = &sys;
    rs.normalization = normalization;
    if (norm_weights) rs.norm_weights = *norm_weights;
    const int k = static_cast<int>(sys.vars.size());
    rs.equations.reserve(sys.equations.size());
    rs.gradients.resize(sys.equations.size());
    for (std::size_t e = 0; e < sys.equations.size(); ++e) {
        rs.equations.push_back(CompiledPoly::from(sys.equations[e]));
        rs.gradients[e].reserve(k);
        for (int v = 0; v < k; ++v)
            rs.gradients[e].push_back(CompiledPoly::from(sys.equations[e].derivative(v)));
    }
    return rs;
}

double sup_norm(const std::vector<double>& v) {
    double m = 0;
    for (double t : v) m = std::max(m, std::abs(t));
    return m;
}

NewtonOutcome newton_on(const ResidualSystem& rs, std::vector<double> x, double tol, int max_iter) {
    NewtonOutcome out;
    const int k = rs.nvars();
    const int e = rs.nres();
    const int c_idx = rs.sys->c_index();
    if (e < k) {
        out.reason = "underdetermined system";
        return out;
    }
    std::vector<double> f, scales, jac, step, xt, ft;
    rs.residuals(x, f, &scales);
    double fn = sup_norm(f);
    // once below tol, keep polishing while steps still reduce the residual;
    // this tightens clusters around degenerate (double) roots
    int extra_polish = 8;
    int weak_steps = 0;
    double checkpoint = fn;  // progress gate, checked every 10 iterations
    for (int iter = 0; iter < max_iter; ++iter) {
        if (iter > 0 && iter % 10 == 0) {
            if (fn >= tol && fn > 0.05 * checkpoint) break;  // stagnating away from a root
            checkpoint = fn;
        }
        if (!std::isfinite(fn)) {
            out.reason = "diverged";
            return out;
        }
        if (fn < tol && extra_polish-- <= 0) break;
        if (fn == 0.0) break;
        rs.jacobian(x, scales, jac);
        if (!qr_least_squares(jac, f, e, k, step)) {
            // Tikhonov fallback for (near-)singular Jacobians
            std::vector<double> aug(static_cast<std::size_t>(e + k) * k, 0.0);
            std::vector<double> baug(e + k, 0.0);
            std::copy(jac.begin(), jac.end(), aug.begin());
            std::copy(f.begin(), f.end(), baug.begin());
            double mu = 1e-8;
            for (int i = 0; i < k; ++i) aug[(e + i) * k + i] = mu;
            if (!qr_least_squares(aug, baug, e + k, k, step)) {
                if (fn < tol) break;
                out.reason = "singular_jacobian";
                return out;
            }
        }
        bool accepted = false;
        double damp = 1.0;
        std::vector<double> st;
        for (int halvings = 0; halvings <= 30; ++halvings, damp *= 0.5) {
            xt = x;
            bool positive = true;
            for (int i = 0; i < k; ++i) {
                xt[i] -= damp * step[i];
                if (i != c_idx && !(xt[i] > 0)) positive = false;
            }
            if (!positive) continue;
            rs.residuals(xt, ft, &st);
            double fnt = sup_norm(ft);
            if (std::isfinite(fnt) && fnt < fn) {
                weak_steps = fnt > 0.9 * fn ? weak_steps + 1 : 0;
                x = xt;
                f = ft;
                scales = st;
                fn = fnt;
                accepted = true;
                break;
            }
        }
        out.iterations = iter + 1;
        if (!accepted) break;              // no improving step left
        if (weak_steps >= 6 && fn >= tol) break;  // least-squares creep, not a root
    }
    out.ok = fn < tol;
    out.reason = out.ok ? "converged"
                        : (out.iterations >= max_iter ? "iteration cap" : "stalled");
    out.x = x;
    out.residual = fn;
    return out;
}

int resolve_threads(int requested, int njobs) {
    int t = requested;
    if (t <= 0) {
        if (const char* env = std::getenv("FLAGEIN_THREADS")) t = std::atoi(env);
    }
    if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
    if (t <= 0) t = 1;
    return std::max(1, std::min(t, njobs));
}

}  // namespace

NewtonOutcome newton_polish(const PolySystem& sys, std::vector<double> x0, double tol, int max_iter,
                            std::optional<SolveConfig::Normalization> normalization,
                            const std::vector<double>* norm_weights) {
    if (static_cast<int>(x0.size()) != static_cast<int>(sys.vars.size()))
        throw std::invalid_argument("start point arity mismatch");
    for (int i = 0; i < sys.c_index(); ++i)
        if (!(x0[i] > 0)) throw std::invalid_argument("start point lambdas must be positive");
    if (normalization == SolveConfig::Normalization::unit_volume && !norm_weights)
        throw std::invalid_argument("unit_volume normalization needs dimension weights");
    ResidualSystem rs = make_residual_system(sys, normalization, norm_weights);
    return newton_on(rs, std::move(x0), tol, max_iter);
}

namespace {

std::map<std::string, double> expand_bindings(const PolySystem& sys, const std::vector<double>& x) {
    std::map<std::string, double> out;
    for (const KeyBinding& b : sys.bindings)
        out[b.key] = b.value ? b.value->to_double() : x[b.var];
    return out;
}

SolutionRecord make_record(const Flag& flag, const InvariantMetric& metric,
                           const std::string& source) {
    RicciReport rep = ricci_report(flag, metric);
    SolutionRecord rec;
    rec.lambdas = metric.to_map(flag);
    rec.c = rep.c_estimate;
    rec.residual = rep.residual;
    rec.h_invariant = rep.h_invariant;
    rec.volume_normalized_c =
        rep.c_estimate * std::pow(rep.volume, 1.0 / static_cast<double>(flag.dimension()));
    rec.source = source;
    rec.family = std::string(1, family_tag(flag.family().family));
    rec.partition = flag.partition();
    return rec;
}

// Searches for a non-identity block permutation pi (preserving block sizes)
// and a common scale kappa with lambda_b(pi(xi)) = kappa * lambda_a(xi) for
// every t-root xi; backtracking with value pruning, so the all-equal case
// exits on the first hit.
bool related_by_block_permutation(const Flag& flag, const std::map<std::string, double>& la,
                                  const std::map<std::string, double>& lb, double tol) {
    const auto& part = flag.partition();
    const int s = static_cast<int>(part.size());
    if (s < 2) return false;

    auto mapped_key = [&](const TWeight& w, const std::vector<int>& perm) {
        std::vector<int> c(s, 0);
        for (int i = 0; i < s; ++i)
            if (w.coeffs[i] != 0) c[perm[i]] = w.coeffs[i];
        return TWeight(c).positive_rep().str();
    };

    std::vector<int> perm(s, -1);
    std::vector<bool> used(s, false);
    const auto& summands = flag.summands();

    std::function<bool(int, double)> dfs = [&](int i, double kappa) -> bool {
        if (i == s) {
            for (int k = 0; k < s; ++k)
                if (perm[k] != k) return true;
            return false;  // identity does not count as symmetry
        }
        for (int j = 0; j < s; ++j) {
            if (used[j] || part[j] != part[i]) continue;
            perm[i] = j;
            used[j] = true;
            bool ok = true;
            double k_here = kappa;
            for (const IsotropySummand& sm : summands) {
                if (sm.troot.coeffs[i] == 0) continue;  // checked at an earlier level
                bool determined = true;
                for (int k = 0; k < s && determined; ++k)
                    if (sm.troot.coeffs[k] != 0 && perm[k] == -1) determined = false;
                if (!determined) continue;
                auto target = mapped_key(sm.troot, perm);
                auto ita = la.find(sm.key);
                auto itb = lb.find(target);
                if (ita == la.end() || itb == lb.end()) {
                    ok = false;
                    break;
                }
                if (k_here == 0.0) {
                    k_here = itb->second / ita->second;
                } else if (std::abs(itb->second - k_here * ita->second) >= tol * (1 + k_here)) {
                    ok = false;
                    break;
                }
            }
            if (ok && dfs(i + 1, k_here)) return true;
            used[j] = false;
            perm[i] = -1;
        }
        return false;
    };
    return dfs(0, 0.0);
}

}  // namespace

std::vector<SolutionRecord> multistart_solve(const Flag& flag, const std::optional<Ansatz>& ansatz,
                                             const SolveConfig& config) {
    config.validate();
    PolySystem sys = assemble(flag);
    if (ansatz) sys = specialize(sys, *ansatz);
    const int k = static_cast<int>(sys.vars.size());
    const bool pinned = sys.any_fixed();

    std::optional<SolveConfig::Normalization> normalization;
    std::vector<double> norm_weights(sys.c_index(), 0.0);
    if (!pinned && sys.c_index() > 0) {
        normalization = config.normalization;
        for (const KeyBinding& b : sys.bindings) {
            int idx = *flag.summand_index_of_key(b.key);
            if (b.var >= 0) norm_weights[b.var] += flag.summands()[idx].dim;
        }
    }

    // deterministic start points, all generated up front
    SplitMix64 rng(config.seed);
    std::vector<std::vector<double>> starts(config.starts);
    for (int s = 0; s < config.starts; ++s) {
        starts[s].resize(k);
        for (int i = 0; i < k; ++i) starts[s][i] = rng.log_uniform(config.grid_lo, config.grid_hi);
    }

    ResidualSystem rs = make_residual_system(sys, normalization,
                                             normalization ? &norm_weights : nullptr);
    std::vector<NewtonOutcome> outcomes(config.starts);
    const int nthreads = resolve_threads(config.threads, config.starts);
    if (nthreads == 1) {
        for (int s = 0; s < config.starts; ++s)
            outcomes[s] = newton_on(rs, starts[s], config.tol, config.max_iter);
    } else {
        std::atomic<int> cursor{0};
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back([&]() {
                for (int s = cursor.fetch_add(1); s < config.starts; s = cursor.fetch_add(1))
                    outcomes[s] = newton_on(rs, starts[s], config.tol, config.max_iter);
            });
        }
        for (auto& th : pool) th.join();
    }

    // rescale to the requested normalization, deduplicate, verify
    struct Candidate {
        std::vector<double> x;
        double residual;
    };
    std::vector<Candidate> kept;
    for (const NewtonOutcome& o : outcomes) {
        if (!o.ok) continue;
        std::vector<double> x = o.x;
        bool positive = true;
        for (int i = 0; i < sys.c_index(); ++i)
            if (!(x[i] > 0)) positive = false;
        if (!positive) continue;
        if (normalization) {
            if (*normalization == SolveConfig::Normalization::first_lambda_one) {
                double kappa = 1.0 / x[0];
                for (int i = 0; i < sys.c_index(); ++i) x[i] *= kappa;
                x[sys.c_index()] /= kappa;
            } else {
                double logv = 0, d = 0;
                for (int i = 0; i < sys.c_index(); ++i) {
                    logv += norm_weights[i] * std::log(x[i]);
                    d += norm_weights[i];
                }
                double kappa = std::exp(-logv / d);
                for (int i = 0; i < sys.c_index(); ++i) x[i] *= kappa;
                x[sys.c_index()] /= kappa;
            }
        }
        bool duplicate = false;
        for (Candidate& c : kept) {
            double dist = 0;
            for (int i = 0; i < k; ++i) dist = std::max(dist, std::abs(c.x[i] - x[i]));
            if (dist < config.dedup_tol) {
                duplicate = true;
                if (o.residual < c.residual) {
                    c.x = x;
                    c.residual = o.residual;
                }
                break;
            }
        }
        if (!duplicate) kept.push_back(Candidate{x, o.residual});
    }

    std::vector<SolutionRecord> records;
    for (const Candidate& c : kept) {
        InvariantMetric metric = InvariantMetric::from_map(flag, expand_bindings(sys, c.x));
        SolutionRecord rec = make_record(flag, metric, "numeric");
        if (rec.residual < config.tol) records.push_back(std::move(rec));
    }
    std::sort(records.begin(), records.end(), [](const SolutionRecord& a, const SolutionRecord& b) {
        if (a.c != b.c) return a.c < b.c;
        return a.lambdas < b.lambdas;
    });

    // annotate pairs related by a block permutation of equal-size blocks
    for (std::size_t j = 0; j < records.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (related_by_block_permutation(flag, records[i].lambdas, records[j].lambdas,
                                             config.dedup_tol)) {
                records[j].annotations.push_back("symmetry-related:" + std::to_string(i));
                break;
            }
        }
    }
    return records;
}

std::vector<std::vector<std::string>> classify_solutions(
    const Flag& flag, const std::vector<SolutionRecord>& records) {
    const std::string fam(1, family_tag(flag.family().family));
    for (const SolutionRecord& r : records)
        if (r.family != fam || r.partition != flag.partition())
            throw std::invalid_argument("classify_solutions: records from mixed descriptors");
    const double tol = 1e-8;
    std::vector<std::vector<std::string>> out(records.size(),
                                              std::vector<std::string>(records.size()));
    for (std::size_t i = 0; i < records.size(); ++i) {
        for (std::size_t j = 0; j < records.size(); ++j) {
            bool distinct = std::abs(records[i].volume_normalized_c -
                                     records[j].volume_normalized_c) > tol ||
                            std::abs(records[i].h_invariant - records[j].h_invariant) > tol;
            out[i][j] = distinct ? "non-isometric" : "undetermined";
        }
    }
    return out;
}

SolutionRecord evaluate_candidate(const Flag& flag, const InvariantMetric& metric,
                                  const std::string& source) {
    return make_record(flag, metric, source);
}

std::vector<double> system_residuals(const PolySystem& sys, const std::vector<double>& x) {
    std::vector<double> out(sys.equations.size());
    for (std::size_t e = 0; e < sys.equations.size(); ++e) {
        auto [value, scale] = CompiledPoly::from(sys.equations[e]).eval_with_scale(x);
        out[e] = std::abs(value) / scale;
    }
    return out;
}

std::vector<double> bind_point(const PolySystem& sys, const std::map<std::string, double>& lambdas,
                               double c) {
    std::vector<double> x(sys.vars.size(), 0.0);
    for (const KeyBinding& b : sys.bindings) {
        auto it = lambdas.find(b.key);
        if (it == lambdas.end()) throw std::invalid_argument("missing lambda for '" + b.key + "'");
        if (b.var >= 0) x[b.var] = it->second;
    }
    x[sys.c_index()] = c;
    return x;
}

std::vector<ReferenceSolution> reference_equal_block_metrics(Family fam, int n, int m) {
    if (m <= 0 || n % m != 0) throw std::invalid_argument("need n a positive multiple of m");
    std::vector<ReferenceSolution> out;
    if (fam == Family::C) {
        Rational nn(n), mm(m);
        Rational delta = mm * mm * nn * nn - Rational(4) * (mm * mm * mm + mm) * nn +
                         Rational(4) * mm.pow(4) - Rational(8) * mm.pow(3) + Rational(8) * mm * mm -
                         Rational(4);
        if (delta.sign() < 0) return out;
        QuadValue sd = QuadValue::sqrt_of(delta);
        Rational denom_h = Rational(2) * ((nn - mm) * mm + mm + Rational(1));
        Rational base_h = Rational(2) * (mm + Rational(1)) + (nn - Rational(2) * mm + Rational(2)) * mm;
        Rational denom_c = Rational(16) * (nn + Rational(1)) * ((nn - mm) * mm + mm + Rational(1));
        Rational base_c = Rational(4) * mm * (nn - Rational(2) * mm + Rational(2)) *
                              (mm * nn - mm * mm + mm + Rational(1)) +
                          (mm + Rational(1)) * (Rational(6) * mm * nn - Rational(4) * mm * mm +
                                                Rational(4));
        Rational c_rad = Rational(2) * (mm + Rational(1));
        for (int sign : {+1, -1}) {
            QuadValue h = (QuadValue(base_h) + QuadValue(Rational(sign)) * sd) / QuadValue(denom_h);
            QuadValue c =
                (QuadValue(base_c) - QuadValue(Rational(sign) * c_rad) * sd) / QuadValue(denom_c);
            out.push_back(ReferenceSolution{h, c});
        }
    } else {
        Rational nn(n), mm(m);
        Rational delta = nn * nn - Rational(4) * (mm - Rational(1)) * nn +
                         Rational(4) * (mm * mm - Rational(1));
        if (delta.sign() < 0) return out;
        QuadValue sd = QuadValue::sqrt_of(delta);
        Rational denom_h = Rational(2) * (nn - Rational(1));
        Rational base_h = nn + Rational(2) * (mm - Rational(1));
        Rational denom_c = Rational(8) * (nn - Rational(1)) * (nn - Rational(1));
        Rational base_c = (nn - Rational(2) * mm - Rational(2)) * (Rational(2) * nn - mm - Rational(1));
        for (int sign : {+1, -1}) {
            QuadValue h = (QuadValue(base_h) + QuadValue(Rational(sign)) * sd) / QuadValue(denom_h);
            QuadValue c = (QuadValue(base_c) - QuadValue(Rational(sign)) * sd) / QuadValue(denom_c);
            out.push_back(ReferenceSolution{h, c});
        }
    }
    return out;
}

AdjudicationReport adjudicate(const Flag& flag, const std::optional<Ansatz>& ansatz,
                              const std::vector<std::pair<std::string, InvariantMetric>>& candidates,
                              const SolveConfig& config, double threshold) {
    AdjudicationReport rep;
    rep.threshold = threshold;
    PolySystem full = assemble(flag);
    for (const auto& [label, metric] : candidates) {
        AdjudicationEntry entry;
        entry.label = label;
        entry.lambdas = metric.to_map(flag);
        RicciReport rr = ricci_report(flag, metric);
        entry.c_estimate = rr.c_estimate;
        entry.ricci_residual = rr.residual;
        entry.system_residual =
            sup_norm(system_residuals(full, bind_point(full, entry.lambdas, rr.c_estimate)));
        entry.einstein_by_ricci = entry.ricci_residual < threshold;
        entry.einstein_by_system = entry.system_residual < threshold;
        rep.candidates.push_back(std::move(entry));
    }
    rep.numeric = multistart_solve(flag, ansatz, config);
    rep.classification = classify_solutions(flag, rep.numeric);
    rep.consistent = true;
    for (const AdjudicationEntry& e : rep.candidates)
        if (e.einstein_by_ricci != e.einstein_by_system) rep.consistent = false;
    for (const SolutionRecord& r : rep.numeric)
        if (!(r.residual < threshold)) rep.consistent = false;
    return rep;
}

nlohmann::json SolutionRecord::to_json() const {
    nlohmann::json j;
    j["lambdas"] = lambdas;
    j["c"] = c;
    j["residual"] = residual;
    j["h_invariant"] = h_invariant;
    j["volume_normalized_c"] = volume_normalized_c;
    j["source"] = source;
    j["annotations"] = annotations;
    return j;
}

nlohmann::json AdjudicationReport::to_json() const {
    nlohmann::json j;
    nlohmann::json cands = nlohmann::json::array();
    for (const AdjudicationEntry& e : candidates) {
        nlohmann::json je;
        je["label"] = e.label;
        je["lambdas"] = e.lambdas;
        je["c_estimate"] = e.c_estimate;
        je["ricci_residual"] = e.ricci_residual;
        je["system_residual"] = e.system_residual;
        je["einstein_by_ricci"] = e.einstein_by_ricci;
        je["einstein_by_system"] = e.einstein_by_system;
        cands.push_back(je);
    }
    j["candidates"] = cands;
    nlohmann::json nums = nlohmann::json::array();
    for (const SolutionRecord& r : numeric) nums.push_back(r.to_json());
    j["numeric_solutions"] = nums;
    j["classification"] = classification;
    j["threshold"] = threshold;
    j["consistent"] = consistent;
    return j;
}

}  // namespace flagein
