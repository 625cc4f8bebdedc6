#include "flagein/ricci.hpp"

#include <cmath>
#include <stdexcept>

namespace flagein {

InvariantMetric InvariantMetric::ones(const Flag& flag) {
    return InvariantMetric(std::vector<double>(flag.summand_count(), 1.0));
}

InvariantMetric InvariantMetric::from_values(const Flag& flag, std::vector<double> by_summand) {
    if (static_cast<int>(by_summand.size()) != flag.summand_count())
        throw std::invalid_argument("metric needs one value per summand");
    for (double v : by_summand)
        if (!(v > 0)) throw std::invalid_argument("metric parameters must be positive");
    return InvariantMetric(std::move(by_summand));
}

InvariantMetric InvariantMetric::from_map(const Flag& flag,
                                          const std::map<std::string, double>& values) {
    std::vector<double> v(flag.summand_count(), 0.0);
    std::vector<bool> seen(flag.summand_count(), false);
    for (const auto& [key, val] : values) {
        auto idx = flag.summand_index_of_key(key);
        if (!idx) throw std::invalid_argument("metric key '" + key + "' is not a t-root of this flag");
        if (seen[*idx]) throw std::invalid_argument("duplicate metric key '" + key + "'");
        seen[*idx] = true;
        v[*idx] = val;
    }
    for (int i = 0; i < flag.summand_count(); ++i)
        if (!seen[i])
            throw std::invalid_argument("metric is missing t-root '" + flag.summands()[i].key + "'");
    return from_values(flag, std::move(v));
}

InvariantMetric InvariantMetric::scaled(double kappa) const {
    if (!(kappa > 0)) throw std::invalid_argument("scale factor must be positive");
    std::vector<double> v = values_;
    for (double& x : v) x *= kappa;
    return InvariantMetric(std::move(v));
}

std::map<std::string, double> InvariantMetric::to_map(const Flag& flag) const {
    std::map<std::string, double> out;
    for (int i = 0; i < flag.summand_count(); ++i) out[flag.summands()[i].key] = values_[i];
    return out;
}

namespace {

Root root_sum(const Root& a, const Root& b) {
    std::vector<int> c(a.coeffs);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs[i];
    return Root(c);
}

}  // namespace

double ricci_component(const Flag& flag, const InvariantMetric& metric, const Root& alpha) {
    const RootFamily& fam = flag.family();
    double value = killing_inner(fam, alpha, alpha).to_double();
    for (const Root& phi : flag.r_theta_of(alpha))
        value += structure_constant_sq(fam, alpha, phi).to_double();
    const double la = metric.lambda(flag.summand_index(alpha));
    for (const Root& beta : flag.r_m_of(alpha)) {
        const double lb = metric.lambda(flag.summand_index(beta));
        const double lab = metric.lambda(flag.summand_index(root_sum(alpha, beta)));
        const double nsq = structure_constant_sq(fam, alpha, beta).to_double();
        value += 0.25 * nsq / (lab * lb) * (la * la - (lab - lb) * (lab - lb));
    }
    return value;
}

Rational ricci_component_exact(const Flag& flag, const std::vector<Rational>& lambdas,
                               const Root& alpha) {
    if (static_cast<int>(lambdas.size()) != flag.summand_count())
        throw std::invalid_argument("need one rational lambda per summand");
    const RootFamily& fam = flag.family();
    Rational value = killing_inner(fam, alpha, alpha);
    for (const Root& phi : flag.r_theta_of(alpha)) value += structure_constant_sq(fam, alpha, phi);
    const Rational la = lambdas[flag.summand_index(alpha)];
    for (const Root& beta : flag.r_m_of(alpha)) {
        const Rational lb = lambdas[flag.summand_index(beta)];
        const Rational lab = lambdas[flag.summand_index(root_sum(alpha, beta))];
        const Rational nsq = structure_constant_sq(fam, alpha, beta);
        Rational diff = lab - lb;
        value += Rational(1, 4) * nsq / (lab * lb) * (la * la - diff * diff);
    }
    return value;
}

RicciReport ricci_report(const Flag& flag, const InvariantMetric& metric,
                         bool check_representatives) {
    RicciReport rep;
    const auto& summands = flag.summands();
    rep.summands.reserve(summands.size());
    double ratio_sum = 0;
    for (std::size_t i = 0; i < summands.size(); ++i) {
        const IsotropySummand& s = summands[i];
        double ric = ricci_component(flag, metric, s.fiber.front());
        if (check_representatives) {
            for (const Root& a : s.fiber) {
                double other = ricci_component(flag, metric, a);
                double scale = std::max(std::abs(ric), 1e-300);
                if (std::abs(other - ric) / scale > 1e-12)
                    throw std::runtime_error("fiber representatives of " + s.key +
                                             " disagree: " + std::to_string(ric) + " vs " +
                                             std::to_string(other));
            }
        }
        SummandRicci sr;
        sr.key = s.key;
        sr.dim = s.dim;
        sr.lambda = metric.lambda(static_cast<int>(i));
        sr.ric = ric;
        sr.ratio = ric / sr.lambda;
        ratio_sum += sr.ratio;
        rep.summands.push_back(sr);
    }
    rep.c_estimate = ratio_sum / static_cast<double>(rep.summands.size());
    double total_dim = 0;
    double log_volume = 0;
    for (const SummandRicci& sr : rep.summands) {
        rep.residual = std::max(rep.residual, std::abs(sr.ric - rep.c_estimate * sr.lambda));
        rep.scalar_curvature += sr.dim * sr.ratio;
        log_volume += sr.dim * std::log(sr.lambda);
        total_dim += sr.dim;
    }
    rep.volume = std::exp(log_volume);
    rep.h_invariant = std::exp(log_volume / total_dim) * rep.scalar_curvature;
    return rep;
}

nlohmann::json RicciReport::to_json() const {
    nlohmann::json j;
    nlohmann::json arr = nlohmann::json::array();
    for (const SummandRicci& s : summands) {
        nlohmann::json js;
        js["key"] = s.key;
        js["dim"] = s.dim;
        js["lambda"] = s.lambda;
        js["ric"] = s.ric;
        js["ratio"] = s.ratio;
        arr.push_back(js);
    }
    j["summands"] = arr;
    j["c_estimate"] = c_estimate;
    j["residual"] = residual;
    j["scalar_curvature"] = scalar_curvature;
    j["volume"] = volume;
    j["h_invariant"] = h_invariant;
    return j;
}

}  // namespace flagein
