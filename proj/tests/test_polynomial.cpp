#include <doctest.h>

#include "flagein/polynomial.hpp"
#include "flagein/solver.hpp"

using namespace flagein;

namespace {

// 3 variables x, y, z
Polynomial make_sample() {
    Polynomial p(3);
    p.add_term({2, 0, 0}, Rational(3));    // 3x^2
    p.add_term({0, 1, 1}, Rational(-2));   // -2yz
    p.add_term({0, 0, 0}, Rational(1, 2)); // 1/2
    return p;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
    Polynomial p = make_sample();
    Polynomial q = Polynomial::variable(3, 0) * Polynomial::variable(3, 1);  // xy
    Polynomial r = p + q;
    CHECK(r.coefficient({1, 1, 0}) == Rational(1));
    CHECK((r - q) == p);
    Polynomial prod = p * q;
    CHECK(prod.coefficient({3, 1, 0}) == Rational(3));
    CHECK(prod.coefficient({1, 2, 1}) == Rational(-2));
    CHECK(prod.total_degree() == 4);
    CHECK(p.degree_in(0) == 2);
    CHECK(p.degree_in(2) == 1);

    Polynomial zero = p - p;
    CHECK(zero.is_zero());
}

TEST_CASE("evaluation: exact and floating point") {
    Polynomial p = make_sample();
    std::vector<Rational> x = {Rational(1, 2), Rational(2), Rational(3)};
    // 3/4 - 12 + 1/2 = -43/4
    CHECK(p.eval_exact(x) == Rational(-43, 4));
    CHECK(p.eval({0.5, 2.0, 3.0}) == doctest::Approx(-10.75).epsilon(1e-15));
}

TEST_CASE("derivative") {
    Polynomial p = make_sample();
    Polynomial dx = p.derivative(0);
    CHECK(dx.coefficient({1, 0, 0}) == Rational(6));
    CHECK(dx.term_count() == 1);
    CHECK(p.derivative(1).coefficient({0, 0, 1}) == Rational(-2));

    // central finite differences on random positive points
    SplitMix64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x = {0.2 + rng.uniform01(), 0.2 + rng.uniform01(),
                                 0.2 + rng.uniform01()};
        for (int v = 0; v < 3; ++v) {
            double step = 1e-6;
            std::vector<double> xp = x, xm = x;
            xp[v] += step;
            xm[v] -= step;
            double fd = (p.eval(xp) - p.eval(xm)) / (2 * step);
            double an = p.derivative(v).eval(x);
            CHECK(an == doctest::Approx(fd).epsilon(1e-5));
        }
    }
}

TEST_CASE("substitute and remap") {
    Polynomial p = make_sample();
    Polynomial sub = p.substitute(1, Rational(2));  // y = 2
    CHECK(sub.coefficient({0, 0, 1}) == Rational(-4));
    CHECK(sub.degree_in(1) == 0);

    // merge y and z into one variable of a 2-variable polynomial
    Polynomial merged = p.remap({0, 1, 1}, 2);
    CHECK(merged.coefficient({0, 2}) == Rational(-2));
    CHECK(merged.coefficient({2, 0}) == Rational(3));
}

TEST_CASE("normalization divides monomial and rational content") {
    Polynomial p(2);
    p.add_term({3, 1}, Rational(-4));
    p.add_term({2, 1}, Rational(8));
    Polynomial n = p.normalized();
    // common monomial x^2 y and content 4 removed; leading term made positive
    CHECK(n.coefficient({1, 0}) == Rational(1));
    CHECK(n.coefficient({0, 0}) == Rational(-2));

    Polynomial scaled = p;
    scaled *= Rational(-7, 3);
    CHECK(scaled.normalized() == n);
}

TEST_CASE("json round-trip") {
    Polynomial p = make_sample();
    auto j = p.to_json();
    Polynomial back = Polynomial::from_json(j, 3);
    CHECK(back == p);
    CHECK(back.to_json().dump() == j.dump());
}

TEST_CASE("text rendering") {
    Polynomial p = make_sample();
    CHECK(p.text({"x", "y", "z"}) == "3*x^2 - 2*y*z + 1/2");
    CHECK(Polynomial(2).text({"a", "b"}) == "0");
}
