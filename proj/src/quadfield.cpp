#include "flagein/quadfield.hpp"

#include <cmath>
#include <stdexcept>

namespace flagein {

SquarefreeSplit squarefree_split(const Rational& x) {
    if (x.sign() < 0) throw std::invalid_argument("squarefree split of a negative value");
    if (x.is_zero()) return {Rational(0), 0};
    // x = n/d = (n*d)/d^2, so sqrt(x) = sqrt(n*d)/d
    long long nd;
    {
        Rational prod = Rational::make(x.num(), 1) * Rational::make(x.den(), 1);
        if (prod.num() > static_cast<int128>(4e18)) throw std::overflow_error("radicand too large");
        nd = static_cast<long long>(prod.num());
    }
    long long square = 1;
    long long m = nd;
    for (long long p = 2; p * p <= m; ++p) {
        while (m % (p * p) == 0) {
            m /= p * p;
            square *= p;
        }
    }
    long long rad = nd / (square * square);
    return {Rational::make(square, x.den()), rad};
}

QuadValue::QuadValue(const Rational& a, const Rational& b, long long radicand)
    : a_(a), b_(b), r_(radicand) {
    if (b_.is_zero()) {
        r_ = 0;
    } else if (r_ <= 1) {
        // sqrt(0) or sqrt(1) collapse into the rational part
        if (r_ == 1) {
            a_ += b_;
            b_ = Rational(0);
            r_ = 0;
        } else {
            b_ = Rational(0);
            r_ = 0;
        }
    }
}

QuadValue QuadValue::sqrt_of(const Rational& x) {
    SquarefreeSplit s = squarefree_split(x);
    return QuadValue(Rational(0), s.factor, s.radicand);
}

void QuadValue::check_compatible(const QuadValue& o) const {
    if (!b_.is_zero() && !o.b_.is_zero() && r_ != o.r_)
        throw std::invalid_argument("mixed radicands in quadratic-field arithmetic");
}

QuadValue& QuadValue::operator+=(const QuadValue& o) {
    check_compatible(o);
    a_ += o.a_;
    if (o.b_.is_zero()) return *this;
    if (b_.is_zero()) {
        b_ = o.b_;
        r_ = o.r_;
    } else {
        b_ += o.b_;
        if (b_.is_zero()) r_ = 0;
    }
    return *this;
}

QuadValue& QuadValue::operator*=(const QuadValue& o) {
    check_compatible(o);
    long long r = !b_.is_zero() ? r_ : o.r_;
    Rational na = a_ * o.a_;
    if (!b_.is_zero() && !o.b_.is_zero()) na += b_ * o.b_ * Rational(r);
    Rational nb = a_ * o.b_ + b_ * o.a_;
    *this = QuadValue(na, nb, nb.is_zero() ? 0 : r);
    return *this;
}

QuadValue& QuadValue::operator/=(const QuadValue& o) {
    if (o.is_zero()) throw std::invalid_argument("division by zero quadratic value");
    if (o.b_.is_zero()) {
        a_ /= o.a_;
        if (!b_.is_zero()) b_ /= o.a_;
        return *this;
    }
    // multiply by the conjugate
    QuadValue conj(o.a_, -o.b_, o.r_);
    Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * Rational(o.r_);
    if (norm.is_zero()) throw std::invalid_argument("division by zero norm");
    *this *= conj;
    a_ /= norm;
    if (!b_.is_zero()) b_ /= norm;
    return *this;
}

double QuadValue::to_double() const {
    double v = a_.to_double();
    if (!b_.is_zero()) v += b_.to_double() * std::sqrt(static_cast<double>(r_));
    return v;
}

std::string QuadValue::str() const {
    if (b_.is_zero()) return a_.str();
    std::string rad = "sqrt(" + std::to_string(r_) + ")";
    std::string bs;
    Rational ab = b_.abs();
    bs = (ab == Rational(1)) ? rad : ab.str() + "*" + rad;
    if (a_.is_zero()) return (b_.sign() < 0 ? "-" : "") + bs;
    return a_.str() + (b_.sign() < 0 ? " - " : " + ") + bs;
}

}  // namespace flagein
