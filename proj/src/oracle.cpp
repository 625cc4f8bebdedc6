#include "flagein/oracle.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace flagein {

namespace {

RationalMatrix zero_matrix(int dim) {
    return RationalMatrix(dim, std::vector<Rational>(dim, Rational(0)));
}

RationalMatrix bracket(const RationalMatrix& a, const RationalMatrix& b) {
    const int dim = static_cast<int>(a.size());
    RationalMatrix out = zero_matrix(dim);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
            if (a[i][k].is_zero() && b[i][k].is_zero()) continue;
            for (int j = 0; j < dim; ++j) {
                if (!a[i][k].is_zero() && !b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
                if (!b[i][k].is_zero() && !a[k][j].is_zero()) out[i][j] -= b[i][k] * a[k][j];
            }
        }
    return out;
}

Rational trace_product(const RationalMatrix& a, const RationalMatrix& b) {
    const int dim = static_cast<int>(a.size());
    Rational t(0);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k)
            if (!a[i][k].is_zero() && !b[k][i].is_zero()) t += a[i][k] * b[k][i];
    return t;
}

bool is_zero_matrix(const RationalMatrix& a) {
    for (const auto& row : a)
        for (const Rational& v : row)
            if (!v.is_zero()) return false;
    return true;
}

long long isqrt_ll(long long v) {
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

}  // namespace

MatrixRealization MatrixRealization::build(const RootFamily& fam) {
    fam.validate();
    if (fam.rank > 8)
        throw std::invalid_argument("matrix oracle is desk-scale only (rank <= 8), got rank " +
                                    std::to_string(fam.rank));
    MatrixRealization real;
    real.fam_ = fam;
    const int n = fam.rank;
    const int dim = 2 * n;
    real.trace_factor_ =
        fam.family == Family::C ? Rational(2LL * (n + 1)) : Rational(2LL * (n - 1));

    real.roots_ = enumerate_roots(fam);
    for (const Root& r : real.roots_) {
        RationalMatrix e = zero_matrix(dim);
        int i = -1, j = -1;
        int two_at = -1;
        for (int k = 0; k < n; ++k) {
            if (r.coeffs[k] == 2 || r.coeffs[k] == -2) two_at = k;
            if (r.coeffs[k] != 0 && i == -1)
                i = k;
            else if (r.coeffs[k] != 0)
                j = k;
        }
        if (two_at >= 0) {
            // +-2e_i (family C): E_{i,n+i} resp. E_{n+i,i}
            if (r.coeffs[two_at] > 0)
                e[two_at][n + two_at] = Rational(1);
            else
                e[n + two_at][two_at] = Rational(1);
        } else if (r.coeffs[i] * r.coeffs[j] < 0) {
            // e_i - e_j (i the positive index): E_{i,j} - E_{n+j,n+i}
            int pi = r.coeffs[i] > 0 ? i : j;
            int pj = r.coeffs[i] > 0 ? j : i;
            e[pi][pj] = Rational(1);
            e[n + pj][n + pi] = Rational(-1);
        } else if (r.coeffs[i] > 0) {
            // e_i + e_j, i < j: E_{i,n+j} +- E_{j,n+i}
            e[i][n + j] = Rational(1);
            e[j][n + i] = fam.family == Family::C ? Rational(1) : Rational(-1);
        } else {
            // -(e_i + e_j): transpose positions
            e[n + j][i] = Rational(1);
            e[n + i][j] = fam.family == Family::C ? Rational(1) : Rational(-1);
        }
        // normalize so that B(X_a, X_-a) = 1:
        // B(E_a, E_-a) = tf * tr(E_a E_-a), so the radicand is that value
        ScaledMatrix sm;
        sm.m = std::move(e);
        long long tr = two_at >= 0 ? 1 : 2;
        Rational b = real.trace_factor_ * Rational(tr);
        sm.radicand = static_cast<long long>(b.num());  // b is a positive integer
        real.vectors_.emplace(r.key(), std::move(sm));
    }
    return real;
}

const ScaledMatrix& MatrixRealization::root_vector(const Root& r) const {
    auto it = vectors_.find(r.key());
    if (it == vectors_.end()) throw std::invalid_argument("no root vector for " + r.str());
    return it->second;
}

RationalMatrix MatrixRealization::cartan(int k) const {
    const int n = fam_.rank;
    RationalMatrix h = zero_matrix(2 * n);
    h[k][k] = Rational(1);
    h[n + k][n + k] = Rational(-1);
    return h;
}

Rational MatrixRealization::killing_pair(const Root& a, const Root& b) const {
    const ScaledMatrix& xa = root_vector(a);
    const ScaledMatrix& xb = root_vector(b);
    Rational tr = trace_product(xa.m, xb.m);
    if (tr.is_zero()) return Rational(0);
    long long prod = xa.radicand * xb.radicand;
    long long s = isqrt_ll(prod);
    if (s * s != prod) throw std::logic_error("irrational Killing pairing between root vectors");
    return trace_factor_ * tr / Rational(s);
}

Rational MatrixRealization::bracket_coefficient_sq(const Root& a, const Root& b) const {
    const ScaledMatrix& xa = root_vector(a);
    const ScaledMatrix& xb = root_vector(b);
    RationalMatrix c = bracket(xa.m, xb.m);
    std::vector<int> sum(a.coeffs);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b.coeffs[i];
    if (!is_root(fam_, sum)) {
        if (!is_zero_matrix(c) && !(b == a.negated()))
            throw std::logic_error("bracket lands outside the root decomposition");
        return Rational(0);
    }
    const ScaledMatrix& xs = root_vector(Root(sum));
    // c must be a rational multiple of xs.m
    Rational t(0);
    const int dim = static_cast<int>(c.size());
    for (int i = 0; i < dim && t.is_zero(); ++i)
        for (int j = 0; j < dim && t.is_zero(); ++j)
            if (!xs.m[i][j].is_zero()) t = c[i][j] / xs.m[i][j];
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (c[i][j] != t * xs.m[i][j])
                throw std::logic_error("bracket is not proportional to the target root vector");
    return t * t * Rational(xs.radicand) / Rational(xa.radicand * xb.radicand);
}

bool MatrixRealization::eigenvector_property_holds() const {
    for (int k = 0; k < fam_.rank; ++k) {
        RationalMatrix h = cartan(k);
        for (const Root& r : roots_) {
            const ScaledMatrix& x = root_vector(r);
            RationalMatrix lhs = bracket(h, x.m);
            for (std::size_t i = 0; i < lhs.size(); ++i)
                for (std::size_t j = 0; j < lhs.size(); ++j)
                    if (lhs[i][j] != Rational(r.coeffs[k]) * x.m[i][j]) return false;
        }
    }
    return true;
}

bool MatrixRealization::riesz_bracket_holds(const Root& a) const {
    const ScaledMatrix& xa = root_vector(a);
    const ScaledMatrix& xn = root_vector(a.negated());
    RationalMatrix c = bracket(xa.m, xn.m);
    // [X_a, X_-a] = c / radicand (the two equal radicands multiply to a
    // square); the Riesz element is diag(t, -t) with t_k = coeffs_k/(2 tf),
    // so B(H, H_a) = a(H) for every Cartan H.
    const int n = fam_.rank;
    for (int i = 0; i < 2 * n; ++i)
        for (int j = 0; j < 2 * n; ++j) {
            Rational expected(0);
            if (i == j) {
                int k = i % n;
                int sign = i < n ? 1 : -1;
                expected = Rational(sign * a.coeffs[k]) / (Rational(2) * trace_factor_);
            }
            if (c[i][j] != expected * Rational(xa.radicand)) return false;
        }
    return true;
}

namespace {

using CMat = std::vector<std::complex<double>>;  // dense dim x dim, row major

CMat czero(int dim) { return CMat(static_cast<std::size_t>(dim) * dim, {0.0, 0.0}); }

CMat to_complex(const RationalMatrix& m, std::complex<double> scale) {
    const int dim = static_cast<int>(m.size());
    CMat out = czero(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (!m[i][j].is_zero()) out[i * dim + j] = scale * m[i][j].to_double();
    return out;
}

CMat cbracket(const CMat& a, const CMat& b, int dim) {
    CMat out = czero(dim);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
            std::complex<double> aik = a[i * dim + k];
            std::complex<double> bik = b[i * dim + k];
            if (aik != std::complex<double>{} ) {
                for (int j = 0; j < dim; ++j) out[i * dim + j] += aik * b[k * dim + j];
            }
            if (bik != std::complex<double>{}) {
                for (int j = 0; j < dim; ++j) out[i * dim + j] -= bik * a[k * dim + j];
            }
        }
    return out;
}

std::complex<double> ctrace_product(const CMat& a, const CMat& b, int dim) {
    std::complex<double> t{};
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) t += a[i * dim + k] * b[k * dim + i];
    return t;
}

double max_abs(const CMat& a) {
    double m = 0;
    for (const auto& v : a) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

OracleEvaluator::OracleEvaluator(const Flag& flag) : flag_(flag) {
    MatrixRealization real = MatrixRealization::build(flag.family());
    const int dim = real.ambient_dim();
    const double tf = real.trace_factor().to_double();

    // real compact-form basis of m: A_b = X_b - X_-b, S_b = i(X_b + X_-b)
    std::vector<CMat> basis;
    for (int si = 0; si < flag.summand_count(); ++si) {
        for (const Root& beta : flag.summands()[si].fiber) {
            const ScaledMatrix& xp = real.root_vector(beta);
            const ScaledMatrix& xn = real.root_vector(beta.negated());
            double inv = 1.0 / std::sqrt(static_cast<double>(xp.radicand));
            CMat a = to_complex(xp.m, {inv, 0.0});
            CMat nm = to_complex(xn.m, {inv, 0.0});
            CMat s = czero(dim);
            for (std::size_t t = 0; t < a.size(); ++t) {
                s[t] = std::complex<double>(0.0, 1.0) * (a[t] + nm[t]);
                a[t] -= nm[t];
            }
            index_of_root_[beta.key()] = static_cast<int>(basis.size());
            basis.push_back(std::move(a));
            summand_of_basis_.push_back(si);
            basis.push_back(std::move(s));
            summand_of_basis_.push_back(si);
        }
    }
    basis_size_ = static_cast<int>(basis.size());

    t_rows_.assign(static_cast<std::size_t>(basis_size_) * basis_size_, {});
    pairs_by_k_.assign(basis_size_, {});
    t_by_k_.assign(basis_size_, {});
    for (int i = 0; i < basis_size_; ++i) {
        for (int j = i + 1; j < basis_size_; ++j) {
            CMat br = cbracket(basis[i], basis[j], dim);
            if (max_abs(br) < 1e-13) continue;
            for (int k = 0; k < basis_size_; ++k) {
                std::complex<double> bkl = ctrace_product(br, basis[k], dim);
                double t = -0.5 * tf * bkl.real();
                if (std::abs(tf * bkl.imag()) > 1e-9)
                    throw std::logic_error("Killing pairing of compact-form elements is not real");
                if (std::abs(t) < 1e-13) continue;
                t_rows_[static_cast<std::size_t>(i) * basis_size_ + j].push_back({k, t});
                t_rows_[static_cast<std::size_t>(j) * basis_size_ + i].push_back({k, -t});
                pairs_by_k_[k].push_back({i, j});
                t_by_k_[k].push_back(t);
            }
        }
    }
}

double OracleEvaluator::ricci(const InvariantMetric& metric, const Root& alpha) const {
    Root pos = is_positive(alpha) ? alpha : alpha.negated();
    auto it = index_of_root_.find(pos.key());
    if (it == index_of_root_.end())
        throw std::invalid_argument("root " + alpha.str() + " is not in R_M of this flag");
    const int a = it->second;

    std::vector<double> lam(basis_size_);
    for (int i = 0; i < basis_size_; ++i) lam[i] = metric.lambda(summand_of_basis_[i]);
    const double la = lam[a];

    // -1/2 sum_i |[X, e_i]_m|^2_g with e_i = u_i / sqrt(2 l_i)
    double term1 = 0;
    for (int i = 0; i < basis_size_; ++i) {
        const auto& row = t_rows_[static_cast<std::size_t>(a) * basis_size_ + i];
        for (const Entry& e : row) term1 += e.t * e.t * lam[e.k] / lam[i];
    }
    term1 *= -0.5;

    // -1/2 B(X,X) with B(A,A) = -2
    const double term2 = 1.0;

    // 1/4 sum_{i,j} g([e_i,e_j]_m, X)^2, counting ordered pairs
    double term3 = 0;
    const auto& pairs = pairs_by_k_[a];
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        double t = t_by_k_[a][p];
        term3 += 2.0 * t * t / (lam[pairs[p][0]] * lam[pairs[p][1]]);
    }
    term3 *= la * la / 4.0;

    return (term1 + term2 + term3) / 2.0;
}

double oracle_ricci(const Flag& flag, const InvariantMetric& metric, const Root& alpha) {
    OracleEvaluator eval(flag);
    return eval.ricci(metric, alpha);
}

}  // namespace flagein
