#pragma once

// Sparse multivariate polynomials with exact rational coefficients, ordered
// by total degree then lexicographically on exponent vectors.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "flagein/rational.hpp"

namespace flagein {

using Monomial = std::vector<int>;  // exponent per variable

struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da < db;
        return a < b;
    }
};

class Polynomial {
public:
    explicit Polynomial(int nvars = 0) : nvars_(nvars) {}
    static Polynomial constant(int nvars, const Rational& c);
    static Polynomial variable(int nvars, int var);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Rational, MonomialOrder>& terms() const { return terms_; }

    void add_term(const Monomial& m, const Rational& c);
    Rational coefficient(const Monomial& m) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }

    bool operator==(const Polynomial& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    int total_degree() const;
    int degree_in(int var) const;

    Polynomial derivative(int var) const;

    double eval(const std::vector<double>& x) const;
    Rational eval_exact(const std::vector<Rational>& x) const;

    /// Substitutes an exact value for one variable (variable count unchanged;
    /// the variable simply no longer occurs).
    Polynomial substitute(int var, const Rational& value) const;

    /// Renames/merges variables: exponents of old variables mapped to the
    /// same new index accumulate.
    Polynomial remap(const std::vector<int>& var_map, int new_nvars) const;

    /// Componentwise minimum exponent over all terms.
    Monomial monomial_content() const;
    Polynomial divide_by_monomial(const Monomial& m) const;

    /// gcd of the coefficients (positive).
    Rational content() const;

    /// Divides out monomial content and rational content and fixes the sign
    /// so the leading term (largest monomial) is positive. Suitable as a
    /// canonical form for equality tests on the positive orthant.
    Polynomial normalized() const;

    std::string text(const std::vector<std::string>& names) const;
    std::string latex(const std::vector<std::string>& names) const;

    /// [[coeff_string, [e0, e1, ...]], ...] in descending monomial order.
    nlohmann::json to_json() const;
    static Polynomial from_json(const nlohmann::json& j, int nvars);

private:
    int nvars_;
    std::map<Monomial, Rational, MonomialOrder> terms_;
};

}  // namespace flagein
