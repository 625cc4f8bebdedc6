#pragma once

// Exact rational arithmetic on 128-bit integers. Every operation reduces to
// lowest terms; overflow past the 128-bit range throws instead of wrapping.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace flagein {

using int128 = __int128;
using uint128 = unsigned __int128;

std::string int128_to_string(int128 v);
int128 int128_from_string(const std::string& s, std::size_t* consumed = nullptr);

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }
    static Rational make(int128 n, int128 d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        r.normalize();
        return r;
    }

    int128 num() const { return num_; }
    int128 den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    Rational operator-() const { return make(-num_, den_); }
    Rational abs() const { return num_ < 0 ? -*this : *this; }

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational pow(unsigned e) const;
    Rational inverse() const;

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    /// "p" when integral, "p/q" otherwise.
    std::string str() const;

    /// Accepts "p", "p/q" and plain decimals like "0.25"; exact in all cases.
    static Rational parse(const std::string& s);

private:
    void normalize();
    int128 num_;
    int128 den_;
};

Rational gcd_rational(const Rational& a, const Rational& b);

}  // namespace flagein
