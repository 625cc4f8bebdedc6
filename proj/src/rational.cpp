#include "flagein/rational.hpp"

#include <algorithm>
#include <cctype>

namespace flagein {

namespace {

uint128 uabs(int128 v) { return v < 0 ? static_cast<uint128>(-v) : static_cast<uint128>(v); }

uint128 gcd_u128(uint128 a, uint128 b) {
    while (b != 0) {
        uint128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr uint128 kMax = (~uint128(0)) >> 1;  // largest magnitude we allow

int128 checked_mul(int128 a, int128 b) {
    if (a == 0 || b == 0) return 0;
    uint128 ua = uabs(a), ub = uabs(b);
    if (ua > kMax / ub) throw std::overflow_error("rational overflow");
    uint128 m = ua * ub;
    bool neg = (a < 0) != (b < 0);
    return neg ? -static_cast<int128>(m) : static_cast<int128>(m);
}

int128 checked_add(int128 a, int128 b) {
    if (a > 0 && b > 0 && uabs(a) > kMax - uabs(b)) throw std::overflow_error("rational overflow");
    if (a < 0 && b < 0 && uabs(a) > kMax - uabs(b)) throw std::overflow_error("rational overflow");
    return a + b;
}

}  // namespace

void Rational::normalize() {
    if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    uint128 g = gcd_u128(uabs(num_), uabs(den_));
    if (g > 1) {
        num_ = (num_ < 0 ? -static_cast<int128>(uabs(num_) / g) : static_cast<int128>(uabs(num_) / g));
        den_ = static_cast<int128>(static_cast<uint128>(den_) / g);
    }
}

Rational& Rational::operator+=(const Rational& o) {
    // reduce cross terms first so intermediate products stay small
    uint128 g = gcd_u128(static_cast<uint128>(den_), static_cast<uint128>(o.den_));
    int128 dg = static_cast<int128>(static_cast<uint128>(den_) / g);
    int128 odg = static_cast<int128>(static_cast<uint128>(o.den_) / g);
    int128 n = checked_add(checked_mul(num_, odg), checked_mul(o.num_, dg));
    int128 d = checked_mul(den_, odg);
    num_ = n;
    den_ = d;
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    uint128 g1 = gcd_u128(uabs(num_), static_cast<uint128>(o.den_));
    uint128 g2 = gcd_u128(uabs(o.num_), static_cast<uint128>(den_));
    int128 n1 = (num_ < 0 ? -static_cast<int128>(uabs(num_) / g1) : static_cast<int128>(uabs(num_) / g1));
    int128 n2 = (o.num_ < 0 ? -static_cast<int128>(uabs(o.num_) / g2) : static_cast<int128>(uabs(o.num_) / g2));
    int128 d1 = static_cast<int128>(static_cast<uint128>(den_) / g2);
    int128 d2 = static_cast<int128>(static_cast<uint128>(o.den_) / g1);
    num_ = checked_mul(n1, n2);
    den_ = checked_mul(d1, d2);
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::invalid_argument("rational division by zero");
    return *this *= Rational::make(o.den_, o.num_);
}

bool operator<(const Rational& a, const Rational& b) {
    // a.num/a.den < b.num/b.den  <=>  a.num*b.den < b.num*a.den (dens > 0)
    return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
}

Rational Rational::pow(unsigned e) const {
    Rational r(1);
    Rational base = *this;
    while (e) {
        if (e & 1) r *= base;
        base = (e >>= 1) ? base * base : base;
    }
    return r;
}

Rational Rational::inverse() const {
    if (num_ == 0) throw std::invalid_argument("rational inverse of zero");
    return make(den_, num_);
}

std::string Rational::str() const {
    std::string s = int128_to_string(num_);
    if (den_ != 1) {
        s += "/";
        s += int128_to_string(den_);
    }
    return s;
}

Rational Rational::parse(const std::string& s) {
    std::size_t pos = 0;
    int128 n = int128_from_string(s, &pos);
    if (pos == s.size()) return make(n, 1);
    if (s[pos] == '/') {
        std::size_t q = 0;
        int128 d = int128_from_string(s.substr(pos + 1), &q);
        if (pos + 1 + q != s.size()) throw std::invalid_argument("bad rational: " + s);
        return make(n, d);
    }
    if (s[pos] == '.') {
        int128 den = 1;
        int128 frac = 0;
        for (std::size_t i = pos + 1; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw std::invalid_argument("bad rational: " + s);
            frac = checked_add(checked_mul(frac, 10), s[i] - '0');
            den = checked_mul(den, 10);
        }
        Rational whole = make(n, 1);
        Rational f = make(frac, den);
        return n < 0 || (n == 0 && !s.empty() && s[0] == '-') ? whole - f : whole + f;
    }
    throw std::invalid_argument("bad rational: " + s);
}

Rational gcd_rational(const Rational& a, const Rational& b) {
    if (a.is_zero()) return b.abs();
    if (b.is_zero()) return a.abs();
    uint128 gn = gcd_u128(uabs(a.num()), uabs(b.num()));
    // lcm of denominators
    uint128 gd = gcd_u128(static_cast<uint128>(a.den()), static_cast<uint128>(b.den()));
    int128 lcm = checked_mul(a.den(), static_cast<int128>(static_cast<uint128>(b.den()) / gd));
    return Rational::make(static_cast<int128>(gn), lcm);
}

std::string int128_to_string(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    uint128 u = neg ? static_cast<uint128>(-v) : static_cast<uint128>(v);
    std::string out;
    while (u) {
        out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

int128 int128_from_string(const std::string& s, std::size_t* consumed) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
        throw std::invalid_argument("bad integer: " + s);
    int128 v = 0;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
        v = checked_add(checked_mul(v, 10), s[i] - '0');
    }
    if (consumed)
        *consumed = i;
    else if (i != s.size())
        throw std::invalid_argument("bad integer: " + s);
    return neg ? -v : v;
}

}  // namespace flagein
