#include "flagein/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace flagein {

Polynomial Polynomial::constant(int nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
}

Polynomial Polynomial::variable(int nvars, int var) {
    Polynomial p(nvars);
    Monomial m(nvars, 0);
    m[var] = 1;
    p.add_term(m, Rational(1));
    return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (static_cast<int>(m.size()) != nvars_) throw std::invalid_argument("monomial arity mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial Polynomial::operator-() const {
    Polynomial p(nvars_);
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
    return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial arity mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial arity mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomial arity mismatch");
    Polynomial p(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m(ma);
            for (int i = 0; i < p.nvars_; ++i) m[i] += mb[i];
            p.add_term(m, ca * cb);
        }
    }
    return p;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coef] : terms_) coef *= c;
    return *this;
}

int Polynomial::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
        int t = 0;
        for (int e : m) t += e;
        d = std::max(d, t);
    }
    return d;
}

int Polynomial::degree_in(int var) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
}

Polynomial Polynomial::derivative(int var) const {
    Polynomial p(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Monomial d(m);
        d[var] -= 1;
        p.add_term(d, c * Rational(m[var]));
    }
    return p;
}

double Polynomial::eval(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("eval arity mismatch");
    double sum = 0;
    for (const auto& [m, c] : terms_) {
        double t = c.to_double();
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < m[i]; ++k) t *= x[i];
        sum += t;
    }
    return sum;
}

Rational Polynomial::eval_exact(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("eval arity mismatch");
    Rational sum(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < nvars_; ++i)
            if (m[i] > 0) t *= x[i].pow(static_cast<unsigned>(m[i]));
        sum += t;
    }
    return sum;
}

Polynomial Polynomial::substitute(int var, const Rational& value) const {
    Polynomial p(nvars_);
    for (const auto& [m, c] : terms_) {
        Rational coef = c;
        if (m[var] > 0) coef *= value.pow(static_cast<unsigned>(m[var]));
        Monomial nm(m);
        nm[var] = 0;
        p.add_term(nm, coef);
    }
    return p;
}

Polynomial Polynomial::remap(const std::vector<int>& var_map, int new_nvars) const {
    if (static_cast<int>(var_map.size()) != nvars_) throw std::invalid_argument("remap arity mismatch");
    Polynomial p(new_nvars);
    for (const auto& [m, c] : terms_) {
        Monomial nm(new_nvars, 0);
        for (int i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            int t = var_map[i];
            if (t < 0 || t >= new_nvars) throw std::invalid_argument("remap target out of range");
            nm[t] += m[i];
        }
        p.add_term(nm, c);
    }
    return p;
}

Monomial Polynomial::monomial_content() const {
    if (terms_.empty()) return Monomial(nvars_, 0);
    Monomial out(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        for (int i = 0; i < nvars_; ++i) out[i] = std::min(out[i], m[i]);
    return out;
}

Polynomial Polynomial::divide_by_monomial(const Monomial& m) const {
    Polynomial p(nvars_);
    for (const auto& [mm, c] : terms_) {
        Monomial nm(mm);
        for (int i = 0; i < nvars_; ++i) {
            nm[i] -= m[i];
            if (nm[i] < 0) throw std::invalid_argument("monomial does not divide polynomial");
        }
        p.add_term(nm, c);
    }
    return p;
}

Rational Polynomial::content() const {
    Rational g(0);
    for (const auto& [m, c] : terms_) g = gcd_rational(g, c);
    return g;
}

Polynomial Polynomial::normalized() const {
    if (terms_.empty()) return *this;
    Polynomial p = divide_by_monomial(monomial_content());
    Rational g = p.content();
    if (p.terms_.rbegin()->second.sign() < 0) g = -g;
    p *= g.inverse();
    return p;
}

namespace {

std::string render_monomial(const Monomial& m, const std::vector<std::string>& names, bool latex) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += latex ? " " : "*";
        out += names[i];
        if (m[i] != 1) out += (latex ? "^{" + std::to_string(m[i]) + "}" : "^" + std::to_string(m[i]));
    }
    return out;
}

std::string render(const Polynomial& poly, const std::vector<std::string>& names, bool latex) {
    if (poly.is_zero()) return "0";
    // descending monomial order
    std::vector<std::pair<Monomial, Rational>> terms(poly.terms().begin(), poly.terms().end());
    std::reverse(terms.begin(), terms.end());
    std::string out;
    for (const auto& [m, c] : terms) {
        Rational a = c.abs();
        std::string mono = render_monomial(m, names, latex);
        if (out.empty())
            out += c.sign() < 0 ? "-" : "";
        else
            out += c.sign() < 0 ? " - " : " + ";
        std::string coef;
        if (latex && !a.is_integer())
            coef = "\\tfrac{" + int128_to_string(a.num()) + "}{" + int128_to_string(a.den()) + "}";
        else
            coef = a.str();
        if (mono.empty())
            out += coef;
        else if (a == Rational(1))
            out += mono;
        else
            out += coef + (latex ? " " : "*") + mono;
    }
    return out;
}

}  // namespace

std::string Polynomial::text(const std::vector<std::string>& names) const {
    return render(*this, names, false);
}

std::string Polynomial::latex(const std::vector<std::string>& names) const {
    return render(*this, names, true);
}

nlohmann::json Polynomial::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    std::vector<std::pair<Monomial, Rational>> terms(terms_.begin(), terms_.end());
    std::reverse(terms.begin(), terms.end());
    for (const auto& [m, c] : terms) {
        nlohmann::json t = nlohmann::json::array();
        t.push_back(c.str());
        t.push_back(m);
        arr.push_back(t);
    }
    return arr;
}

Polynomial Polynomial::from_json(const nlohmann::json& j, int nvars) {
    Polynomial p(nvars);
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2) throw std::invalid_argument("bad polynomial json");
        Rational c = Rational::parse(t[0].get<std::string>());
        Monomial m = t[1].get<std::vector<int>>();
        p.add_term(m, c);
    }
    return p;
}

}  // namespace flagein
