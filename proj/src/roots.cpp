#include "flagein/roots.hpp"

#include <stdexcept>

namespace flagein {

char family_tag(Family f) { return f == Family::C ? 'C' : 'D'; }

Family family_from_tag(const std::string& tag) {
    if (tag == "C" || tag == "c") return Family::C;
    if (tag == "D" || tag == "d") return Family::D;
    throw std::invalid_argument("unknown family '" + tag + "', expected C or D");
}

void RootFamily::validate() const {
    if (family == Family::C && rank < 2)
        throw std::invalid_argument("family C needs rank >= 2, got " + std::to_string(rank));
    if (family == Family::D && rank < 4)
        throw std::invalid_argument("family D needs rank >= 4, got " + std::to_string(rank));
}

Root Root::negated() const {
    Root r = *this;
    for (int& c : r.coeffs) c = -c;
    return r;
}

std::int64_t Root::key() const {
    std::int64_t k = 0;
    for (int c : coeffs) k = k * 5 + (c + 2);
    return k;
}

std::string Root::str() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        int c = coeffs[i];
        if (c == 0) continue;
        if (c > 0 && !out.empty()) out += "+";
        if (c == -1)
            out += "-";
        else if (c != 1)
            out += std::to_string(c);
        out += "e" + std::to_string(i + 1);
    }
    return out.empty() ? "0" : out;
}

bool is_positive(const Root& r) {
    for (int c : r.coeffs) {
        if (c > 0) return true;
        if (c < 0) return false;
    }
    return false;
}

bool is_root(const RootFamily& fam, const std::vector<int>& coeffs) {
    if (static_cast<int>(coeffs.size()) != fam.rank) return false;
    int n_one = 0, n_two = 0;
    for (int c : coeffs) {
        int a = c < 0 ? -c : c;
        if (a == 1)
            ++n_one;
        else if (a == 2)
            ++n_two;
        else if (a != 0)
            return false;
    }
    if (n_one == 2 && n_two == 0) return true;
    if (n_one == 0 && n_two == 1) return fam.family == Family::C;
    return false;
}

bool is_long_root(const RootFamily& fam, const Root& r) {
    if (fam.family != Family::C) return false;
    for (int c : r.coeffs)
        if (c == 2 || c == -2) return true;
    return false;
}

std::vector<Root> enumerate_roots(const RootFamily& fam) {
    fam.validate();
    const int n = fam.rank;
    std::vector<Root> out;
    out.reserve(fam.family == Family::C ? 2 * n * n : 2 * n * (n - 1));
    auto emit = [&](std::vector<int> c) { out.emplace_back(std::move(c)); };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int si : {1, -1}) {
                for (int sj : {1, -1}) {
                    std::vector<int> c(n, 0);
                    c[i] = si;
                    c[j] = sj;
                    emit(std::move(c));
                }
            }
        }
    }
    if (fam.family == Family::C) {
        for (int i = 0; i < n; ++i) {
            for (int s : {1, -1}) {
                std::vector<int> c(n, 0);
                c[i] = 2 * s;
                emit(std::move(c));
            }
        }
    }
    return out;
}

Rational killing_inner(const RootFamily& fam, const Root& a, const Root& b) {
    fam.validate();
    long long dot = 0;
    for (int i = 0; i < fam.rank; ++i) dot += static_cast<long long>(a.coeffs[i]) * b.coeffs[i];
    long long denom = fam.family == Family::C ? 4LL * (fam.rank + 1) : 4LL * (fam.rank - 1);
    return Rational(dot, denom);
}

std::pair<int, int> root_string(const RootFamily& fam, const Root& alpha, const Root& beta) {
    if (beta == alpha || beta == alpha.negated())
        throw std::invalid_argument("root string undefined for beta = +-alpha");
    auto shift = [&](int k) {
        std::vector<int> c(beta.coeffs);
        for (int i = 0; i < fam.rank; ++i) c[i] += k * alpha.coeffs[i];
        return c;
    };
    int p = 0;
    while (is_root(fam, shift(-(p + 1)))) ++p;
    int q = 0;
    while (is_root(fam, shift(q + 1))) ++q;
    return {p, q};
}

Rational structure_constant_sq(const RootFamily& fam, const Root& alpha, const Root& beta) {
    if (beta == alpha.negated())
        throw std::invalid_argument("N_{alpha,-alpha} is not a structure constant of this form");
    std::vector<int> sum(alpha.coeffs);
    for (int i = 0; i < fam.rank; ++i) sum[i] += beta.coeffs[i];
    if (!is_root(fam, sum)) return Rational(0);
    auto [p, q] = root_string(fam, alpha, beta);
    return Rational(static_cast<long long>(q) * (1 + p), 2) * killing_inner(fam, alpha, alpha);
}

}  // namespace flagein
