#include "flagein/flag.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace flagein {

bool TWeight::is_zero() const {
    for (int c : coeffs)
        if (c != 0) return false;
    return true;
}

TWeight TWeight::negated() const {
    TWeight w = *this;
    for (int& c : w.coeffs) c = -c;
    return w;
}

TWeight TWeight::positive_rep() const {
    for (int c : coeffs) {
        if (c > 0) return *this;
        if (c < 0) return negated();
    }
    return *this;
}

std::string TWeight::str() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        int c = coeffs[i];
        if (c == 0) continue;
        if (c > 0 && !out.empty()) out += "+";
        if (c == -1)
            out += "-";
        else if (c != 1)
            out += std::to_string(c);
        out += "d" + std::to_string(i + 1);
    }
    return out.empty() ? "0" : out;
}

TWeight parse_troot_key(const std::string& key, int blocks) {
    auto fail = [&]() { throw std::invalid_argument("bad t-root key '" + key + "'"); };
    std::vector<int> c(blocks, 0);
    auto read_index = [&](std::size_t& i) {
        if (i >= key.size() || key[i] != 'd') fail();
        ++i;
        std::size_t start = i;
        while (i < key.size() && std::isdigit(static_cast<unsigned char>(key[i]))) ++i;
        if (start == i) fail();
        int idx = std::stoi(key.substr(start, i - start));
        if (idx < 1 || idx > blocks) fail();
        return idx - 1;
    };
    std::size_t i = 0;
    if (!key.empty() && key[0] == '2') {
        ++i;
        int idx = read_index(i);
        if (i != key.size()) fail();
        c[idx] = 2;
        return TWeight(c);
    }
    int first = read_index(i);
    if (i >= key.size() || (key[i] != '+' && key[i] != '-')) fail();
    int sign = key[i] == '+' ? 1 : -1;
    ++i;
    int second = read_index(i);
    if (i != key.size() || second == first) fail();
    c[first] = 1;
    c[second] = sign;
    return TWeight(c);
}

Flag::Flag(RootFamily fam, std::vector<int> partition) : fam_(fam), partition_(std::move(partition)) {
    fam_.validate();
    if (partition_.empty()) throw std::invalid_argument("empty partition");
    int sum = 0;
    for (int p : partition_) {
        if (p <= 0) throw std::invalid_argument("partition entries must be positive");
        sum += p;
    }
    if (sum != fam_.rank)
        throw std::invalid_argument("partition sums to " + std::to_string(sum) + ", expected rank " +
                                    std::to_string(fam_.rank));
    block_of_.resize(fam_.rank);
    int idx = 0;
    for (std::size_t b = 0; b < partition_.size(); ++b)
        for (int k = 0; k < partition_[b]; ++k) block_of_[idx++] = static_cast<int>(b);

    roots_ = enumerate_roots(fam_);
    for (const Root& r : roots_) root_set_.insert(r.key());

    for (const Root& r : roots_) {
        if (project(r).is_zero())
            theta_set_.insert(r.key());
        else
            r_m_.push_back(r);
    }
    for (const Root& r : r_m_)
        if (is_positive(r)) r_m_pos_.push_back(r);

    // group positive roots of R_M by their (positive) t-root projection
    std::map<TWeight, std::vector<Root>> fibers;
    for (const Root& r : r_m_pos_) fibers[project(r)].push_back(r);
    for (auto& [w, fiber] : fibers) {
        // representative order inside a fiber: descending lex on coefficients
        std::sort(fiber.begin(), fiber.end(), [](const Root& a, const Root& b) { return b < a; });
        IsotropySummand s;
        s.troot = w;
        s.fiber = fiber;
        s.dim = 2 * static_cast<int>(fiber.size());
        s.key = w.str();
        summands_.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < summands_.size(); ++i) {
        summand_of_key_[summands_[i].key] = static_cast<int>(i);
        for (const Root& r : summands_[i].fiber) {
            summand_of_root_[r.key()] = static_cast<int>(i);
            summand_of_root_[r.negated().key()] = static_cast<int>(i);
        }
        dim_ += summands_[i].dim;
    }
}

Flag Flag::from_strings(const std::string& family, const std::vector<int>& partition) {
    int rank = std::accumulate(partition.begin(), partition.end(), 0);
    return Flag(RootFamily{family_from_tag(family), rank}, partition);
}

std::vector<Root> Flag::r_theta() const {
    std::vector<Root> out;
    for (const Root& r : roots_)
        if (in_r_theta(r)) out.push_back(r);
    return out;
}

TWeight Flag::project(const Root& alpha) const {
    std::vector<int> c(partition_.size(), 0);
    for (int i = 0; i < fam_.rank; ++i) c[block_of_[i]] += alpha.coeffs[i];
    return TWeight(std::move(c));
}

int Flag::summand_index(const Root& alpha) const {
    auto it = summand_of_root_.find(alpha.key());
    if (it == summand_of_root_.end())
        throw std::invalid_argument("root " + alpha.str() + " is not in R_M");
    return it->second;
}

std::optional<int> Flag::summand_index_of_key(const std::string& key) const {
    auto it = summand_of_key_.find(key);
    if (it == summand_of_key_.end()) return std::nullopt;
    return it->second;
}

TRootSystemType Flag::t_root_system_type() const {
    TRootSystemType res;
    const int s = blocks();
    std::vector<TWeight> all;
    for (const IsotropySummand& sm : summands_) {
        all.push_back(sm.troot);
        all.push_back(sm.troot.negated());
    }
    std::set<std::vector<int>> members;
    for (const TWeight& w : all) members.insert(w.coeffs);

    if (static_cast<int>(all.size()) != 2 * s * s) {
        res.certified = false;
        res.detail = "t-root set has " + std::to_string(all.size()) + " elements, type C_" +
                     std::to_string(s) + " has " + std::to_string(2 * s * s);
        return res;
    }
    // closure under the reflection s_xi(eta) = eta - 2(eta,xi)/(xi,xi) xi,
    // with the standard euclidean product on delta coordinates
    for (const TWeight& xi : all) {
        long long xx = 0;
        for (int c : xi.coeffs) xx += static_cast<long long>(c) * c;
        for (const TWeight& eta : all) {
            long long xe = 0;
            for (int i = 0; i < s; ++i) xe += static_cast<long long>(xi.coeffs[i]) * eta.coeffs[i];
            if ((2 * xe) % xx != 0) {
                res.certified = false;
                res.detail = "reflection of " + eta.str() + " along " + xi.str() + " is not integral";
                return res;
            }
            long long m = 2 * xe / xx;
            std::vector<int> refl(eta.coeffs);
            for (int i = 0; i < s; ++i) refl[i] -= static_cast<int>(m) * xi.coeffs[i];
            if (!members.count(refl)) {
                res.certified = false;
                res.detail = "reflection of " + eta.str() + " along " + xi.str() + " leaves the set";
                return res;
            }
        }
    }
    res.certified = true;
    res.tag = "C_" + std::to_string(s);
    return res;
}

void Flag::require_in_r_m(const Root& alpha) const {
    if (!contains_root(alpha) || in_r_theta(alpha))
        throw std::invalid_argument("root " + alpha.str() + " is not in R_M");
}

std::vector<Root> Flag::r_theta_of(const Root& alpha) const {
    require_in_r_m(alpha);
    std::vector<Root> out;
    for (const Root& phi : roots_) {
        if (!in_r_theta(phi)) continue;
        std::vector<int> sum(alpha.coeffs);
        for (int i = 0; i < fam_.rank; ++i) sum[i] += phi.coeffs[i];
        if (is_root(fam_, sum)) out.push_back(phi);
    }
    return out;
}

std::vector<Root> Flag::r_m_of(const Root& alpha) const {
    require_in_r_m(alpha);
    std::vector<Root> out;
    for (const Root& beta : r_m_) {
        std::vector<int> sum(alpha.coeffs);
        for (int i = 0; i < fam_.rank; ++i) sum[i] += beta.coeffs[i];
        if (!is_root(fam_, sum)) continue;
        Root s(sum);
        if (!in_r_theta(s)) out.push_back(beta);
    }
    return out;
}

nlohmann::json Flag::describe_json() const {
    nlohmann::json j;
    j["family"] = std::string(1, family_tag(fam_.family));
    j["rank"] = fam_.rank;
    j["partition"] = partition_;
    j["roots"] = roots_.size();
    j["r_theta"] = roots_.size() - r_m_.size();
    j["r_m"] = r_m_.size();
    j["dimension"] = dim_;
    TRootSystemType t = t_root_system_type();
    j["t_root_type"] = t.certified ? t.tag : "not certified: " + t.detail;
    nlohmann::json arr = nlohmann::json::array();
    for (const IsotropySummand& s : summands_) {
        nlohmann::json js;
        js["key"] = s.key;
        js["fiber"] = s.fiber.size();
        js["dim"] = s.dim;
        arr.push_back(js);
    }
    j["summands"] = arr;
    return j;
}

std::string Flag::describe_text() const {
    std::ostringstream os;
    os << family_tag(fam_.family) << "_" << fam_.rank << " / partition (";
    for (std::size_t i = 0; i < partition_.size(); ++i) os << (i ? "," : "") << partition_[i];
    os << ")\n";
    os << "|R| = " << roots_.size() << ", |R_Theta| = " << roots_.size() - r_m_.size()
       << ", |R_M| = " << r_m_.size() << ", dim G/K = " << dim_ << "\n";
    TRootSystemType t = t_root_system_type();
    os << "t-root system: " << (t.certified ? t.tag : "not certified (" + t.detail + ")") << "\n";
    os << "summands (" << summands_.size() << "):\n";
    for (const IsotropySummand& s : summands_)
        os << "  " << s.key << "  fiber " << s.fiber.size() << "  dim " << s.dim << "\n";
    return os.str();
}

}  // namespace flagein
