#pragma once

// Root systems C_n and D_n in epsilon coordinates, with the Killing-form
// inner product normalized for the compact groups Sp(n) and SO(2n), root
// strings, and squared structure constants of a Weyl basis.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "flagein/rational.hpp"

namespace flagein {

enum class Family : char { C = 'C', D = 'D' };

char family_tag(Family f);
Family family_from_tag(const std::string& tag);

struct RootFamily {
    Family family;
    int rank;

    // C needs n >= 2, D needs n >= 4; throws std::invalid_argument otherwise.
    void validate() const;
};

/// A root as the integer vector of its epsilon-basis coefficients.
struct Root {
    std::vector<int> coeffs;

    Root() = default;
    explicit Root(std::vector<int> c) : coeffs(std::move(c)) {}

    Root negated() const;
    bool operator==(const Root& o) const { return coeffs == o.coeffs; }
    bool operator!=(const Root& o) const { return !(*this == o); }
    bool operator<(const Root& o) const { return coeffs < o.coeffs; }

    /// Encodes the coefficient vector (entries in [-2,2]) as a single
    /// integer usable as a hash/map key.
    std::int64_t key() const;

    /// Signed-term form with 1-based indices: "e1-e2", "2e3", "-e2-e4".
    std::string str() const;
};

/// A root is positive when its first nonzero coefficient is positive.
bool is_positive(const Root& r);

/// Pattern test, no enumeration: +-e_i+-e_j (i<j) for both families,
/// plus +-2e_i for family C.
bool is_root(const RootFamily& fam, const std::vector<int>& coeffs);

/// Long roots are the +-2e_i of family C.
bool is_long_root(const RootFamily& fam, const Root& r);

/// All roots, each exactly once, closed under negation.
/// |R| = 2n^2 for C_n and 2n(n-1) for D_n.
std::vector<Root> enumerate_roots(const RootFamily& fam);

/// Killing-form inner product of two roots: c_fam * <coeffs,coeffs> with
/// c = 1/(4(n+1)) for sp(n) and 1/(4(n-1)) for so(2n).
Rational killing_inner(const RootFamily& fam, const Root& a, const Root& b);

/// The alpha-string through beta: largest p with beta - p*alpha a root and
/// largest q with beta + q*alpha a root. beta = +-alpha is rejected.
std::pair<int, int> root_string(const RootFamily& fam, const Root& alpha, const Root& beta);

/// N^2_{alpha,beta} of a Weyl basis: 0 when alpha+beta is not a root,
/// otherwise q(1+p)/2 * B(alpha,alpha). beta = -alpha is rejected.
Rational structure_constant_sq(const RootFamily& fam, const Root& alpha, const Root& beta);

}  // namespace flagein
