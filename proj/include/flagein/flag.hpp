#pragma once

// Flag descriptors for Sp(n)/U(n_1)x...xU(n_s) and SO(2n)/U(n_1)x...xU(n_s):
// the root split R = R_Theta u R_M, the projection onto t-roots, the isotropy
// summands with their fibers and dimensions, and the per-root interaction
// sets R_Theta(alpha), R_M(alpha).

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "flagein/roots.hpp"

namespace flagein {

/// Integer vector in the delta basis (one coordinate per block).
struct TWeight {
    std::vector<int> coeffs;

    TWeight() = default;
    explicit TWeight(std::vector<int> c) : coeffs(std::move(c)) {}

    bool is_zero() const;
    TWeight negated() const;
    bool operator==(const TWeight& o) const { return coeffs == o.coeffs; }
    bool operator!=(const TWeight& o) const { return !(*this == o); }
    bool operator<(const TWeight& o) const { return coeffs < o.coeffs; }

    /// Member of {w, -w} whose first nonzero coefficient is positive.
    TWeight positive_rep() const;

    /// "d1-d2", "2d1", general signed-term form otherwise.
    std::string str() const;
};

/// Parses t-root keys of the shapes "2d<i>", "d<i>-d<j>", "d<i>+d<j>".
TWeight parse_troot_key(const std::string& key, int blocks);

struct IsotropySummand {
    TWeight troot;             // positive representative
    std::vector<Root> fiber;   // positive roots alpha with k(alpha) = troot
    int dim = 0;               // real dimension, 2 * |fiber|
    std::string key;           // troot.str()
};

struct TRootSystemType {
    bool certified = false;  // true when the t-root set is exactly of type C_s
    std::string tag;         // "C_<s>" when certified
    std::string detail;      // violation report otherwise
};

/// A validated descriptor together with the derived root/summand data.
class Flag {
public:
    Flag(RootFamily fam, std::vector<int> partition);

    /// Rank is implied by the partition sum.
    static Flag from_strings(const std::string& family, const std::vector<int>& partition);

    const RootFamily& family() const { return fam_; }
    const std::vector<int>& partition() const { return partition_; }
    int rank() const { return fam_.rank; }
    int blocks() const { return static_cast<int>(partition_.size()); }
    int block_of(int epsilon_index) const { return block_of_[epsilon_index]; }

    const std::vector<Root>& roots() const { return roots_; }
    bool contains_root(const Root& r) const { return root_set_.count(r.key()) != 0; }

    std::vector<Root> r_theta() const;
    const std::vector<Root>& r_m() const { return r_m_; }
    const std::vector<Root>& r_m_positive() const { return r_m_pos_; }
    bool in_r_theta(const Root& r) const { return theta_set_.count(r.key()) != 0; }
    bool in_r_m(const Root& r) const { return contains_root(r) && !in_r_theta(r); }

    /// Restriction of a root to the center of the isotropy algebra:
    /// delta_i coefficient = sum of the epsilon coefficients over block i.
    TWeight project(const Root& alpha) const;

    /// One summand per positive t-root, ordered lexicographically on the
    /// t-root coefficient vector.
    const std::vector<IsotropySummand>& summands() const { return summands_; }
    int summand_count() const { return static_cast<int>(summands_.size()); }

    /// Index of the summand a root of R_M belongs to (via +-k(alpha)).
    int summand_index(const Root& alpha) const;
    std::optional<int> summand_index_of_key(const std::string& key) const;

    /// dim G/K = sum of summand dimensions = |R_M|.
    int dimension() const { return dim_; }

    TRootSystemType t_root_system_type() const;

    /// R_Theta(alpha) = { phi in R_Theta : alpha+phi in R }, alpha in R_M.
    std::vector<Root> r_theta_of(const Root& alpha) const;
    /// R_M(alpha) = { beta in R_M : alpha+beta in R_M }, alpha in R_M.
    std::vector<Root> r_m_of(const Root& alpha) const;

    nlohmann::json describe_json() const;
    std::string describe_text() const;

private:
    void require_in_r_m(const Root& alpha) const;

    RootFamily fam_;
    std::vector<int> partition_;
    std::vector<int> block_of_;
    std::vector<Root> roots_;
    std::unordered_set<std::int64_t> root_set_;
    std::unordered_set<std::int64_t> theta_set_;
    std::vector<Root> r_m_;
    std::vector<Root> r_m_pos_;
    std::vector<IsotropySummand> summands_;
    std::unordered_map<std::int64_t, int> summand_of_root_;
    std::unordered_map<std::string, int> summand_of_key_;
    int dim_ = 0;
};

}  // namespace flagein
