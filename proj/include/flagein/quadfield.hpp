#pragma once

// Values a + b*sqrt(r) with rational a, b and a fixed squarefree radicand r.
// Enough arithmetic to back-substitute quadratic roots exactly.

#include <string>

#include "flagein/rational.hpp"

namespace flagein {

/// Splits a nonnegative rational into (q, r) with x = q^2 * r, r a
/// squarefree integer.
struct SquarefreeSplit {
    Rational factor;     // q
    long long radicand;  // r
};
SquarefreeSplit squarefree_split(const Rational& x);

class QuadValue {
public:
    QuadValue() : a_(0), b_(0), r_(0) {}
    explicit QuadValue(const Rational& a) : a_(a), b_(0), r_(0) {}
    QuadValue(const Rational& a, const Rational& b, long long radicand);

    static QuadValue sqrt_of(const Rational& x);  // x >= 0

    const Rational& rational_part() const { return a_; }
    const Rational& radical_part() const { return b_; }
    long long radicand() const { return r_; }
    bool is_rational() const { return b_.is_zero(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    QuadValue operator-() const { return QuadValue(-a_, -b_, r_); }
    QuadValue& operator+=(const QuadValue& o);
    QuadValue& operator-=(const QuadValue& o) { return *this += -o; }
    QuadValue& operator*=(const QuadValue& o);
    QuadValue& operator/=(const QuadValue& o);
    friend QuadValue operator+(QuadValue x, const QuadValue& y) { return x += y; }
    friend QuadValue operator-(QuadValue x, const QuadValue& y) { return x -= y; }
    friend QuadValue operator*(QuadValue x, const QuadValue& y) { return x *= y; }
    friend QuadValue operator/(QuadValue x, const QuadValue& y) { return x /= y; }
    bool operator==(const QuadValue& o) const {
        return a_ == o.a_ && b_ == o.b_ && (b_.is_zero() || r_ == o.r_);
    }

    double to_double() const;
    /// e.g. "(4-sqrt(6))/5" style: "a + b*sqrt(r)" with collapsed parts.
    std::string str() const;

private:
    void check_compatible(const QuadValue& o) const;
    Rational a_, b_;
    long long r_;  // 0 when the value is rational
};

}  // namespace flagein
