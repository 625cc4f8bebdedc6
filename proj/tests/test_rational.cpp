#include <doctest.h>

#include "flagein/quadfield.hpp"
#include "flagein/rational.hpp"

using namespace flagein;

TEST_CASE("rational arithmetic reduces and compares exactly") {
    Rational a(1, 6), b(1, 3);
    CHECK(a + b == Rational(1, 2));
    CHECK(b - a == a);
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(1, 2));
    CHECK(Rational(-4, -8) == Rational(1, 2));
    CHECK(Rational(4, -8) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(2, 3) < Rational(3, 4));
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK(Rational(3, 2).pow(3) == Rational(27, 8));
    CHECK(Rational(5, 7).inverse() == Rational(7, 5));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::invalid_argument);
}

TEST_CASE("rational parse and print round-trip") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-3/4") == Rational(-3, 4));
    CHECK(Rational::parse("12") == Rational(12));
    CHECK(Rational::parse("0.25") == Rational(1, 4));
    CHECK(Rational::parse("-1.5") == Rational(-3, 2));
    CHECK(Rational(22, 7).str() == "22/7");
    CHECK(Rational(-5).str() == "-5");
    CHECK(Rational::parse(Rational(-22, 7).str()) == Rational(-22, 7));
    CHECK_THROWS(Rational::parse("a/b"));
    CHECK_THROWS(Rational::parse("1/2/3"));
}

TEST_CASE("gcd of rationals") {
    CHECK(gcd_rational(Rational(1, 6), Rational(1, 4)) == Rational(1, 12));
    CHECK(gcd_rational(Rational(4), Rational(6)) == Rational(2));
    CHECK(gcd_rational(Rational(0), Rational(-3, 5)) == Rational(3, 5));
}

TEST_CASE("quadratic field values") {
    // (4 - sqrt(6))/5 and its partner multiply to (16-6)/25 = 2/5
    QuadValue s6 = QuadValue::sqrt_of(Rational(6));
    QuadValue five{Rational(5)};
    QuadValue r1 = (QuadValue(Rational(4)) - s6) / five;
    QuadValue r2 = (QuadValue(Rational(4)) + s6) / five;
    CHECK(r1 * r2 == QuadValue(Rational(2, 5)));
    CHECK(r1 + r2 == QuadValue(Rational(8, 5)));
    CHECK(r1.to_double() == doctest::Approx(0.3101020514433644).epsilon(1e-14));

    // sqrt of a non-squarefree rational folds out the square part
    QuadValue s = QuadValue::sqrt_of(Rational(24));  // 2*sqrt(6)
    CHECK(s.radical_part() == Rational(2));
    CHECK(s.radicand() == 6);
    QuadValue q = QuadValue::sqrt_of(Rational(9, 4));
    CHECK(q.is_rational());
    CHECK(q.rational_part() == Rational(3, 2));

    CHECK_THROWS(QuadValue::sqrt_of(Rational(-1)));
    // mixing radicands is rejected
    CHECK_THROWS(s6 + QuadValue::sqrt_of(Rational(2)));
}
