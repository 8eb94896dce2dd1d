#ifndef PIZZA_RATIONAL_HPP
#define PIZZA_RATIONAL_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "pizza/bigint.hpp"

namespace pizza {

// Exact rational, always normalized: gcd(|num|, den) = 1, den >= 1.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long n) : num_(n), den_(1) {}
    Rational(int n) : num_(long(n)), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rational(long n, long d) : num_(n), den_(d) { normalize(); }

    // Accepts "p", "-p", "p/q".
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(BigInt(s));
        return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_integer() const { return den_.is_one(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    int sign() const { return num_.sign(); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(den_, num_);
    }
    friend Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }
    Rational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        return Rational(num_.pow(static_cast<unsigned long>(e)),
                        den_.pow(static_cast<unsigned long>(e)));
    }

    friend int cmp(const Rational& a, const Rational& b) {
        return cmp(a.num_ * b.den_, b.num_ * a.den_);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }

    BigInt floor() const {
        auto [q, r] = BigInt::divmod(num_, den_);
        if (r.sign() < 0) q -= BigInt(1);
        return q;
    }
    BigInt ceil() const { return -((-*this).floor()); }

    double to_double() const { return num_.to_double() / den_.to_double(); }

    // "p" when integral, "p/q" otherwise.
    std::string str() const {
        if (is_integer()) return num_.str();
        return num_.str() + "/" + den_.str();
    }

  private:
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = gcd(abs(num_), den_);
        if (!g.is_one() && !g.is_zero()) {
            num_ = div_exact(num_, g);
            den_ = div_exact(den_, g);
        }
        if (num_.is_zero()) den_ = BigInt(1);
    }
    BigInt num_, den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& a);

// Closed interval with rational endpoints. Exact interval arithmetic
// (no rounding is ever needed over Q).
struct RatInterval {
    Rational lo, hi;

    RatInterval() = default;
    RatInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("RatInterval: lo > hi");
    }
    static RatInterval point(const Rational& x) { return RatInterval(x, x); }

    bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
    bool is_point() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / Rational(2); }
    // Sign certificate: +1 / -1 when the whole interval is one-signed, 0 otherwise.
    int certified_sign() const {
        if (lo.sign() > 0) return 1;
        if (hi.sign() < 0) return -1;
        return 0;
    }

    friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
        return RatInterval(a.lo + b.lo, a.hi + b.hi);
    }
    friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
        return RatInterval(a.lo - b.hi, a.hi - b.lo);
    }
    friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
        Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        Rational lo = p1, hi = p1;
        for (const Rational* p : {&p2, &p3, &p4}) {
            if (*p < lo) lo = *p;
            if (*p > hi) hi = *p;
        }
        return RatInterval(std::move(lo), std::move(hi));
    }
    RatInterval operator-() const { return RatInterval(-hi, -lo); }
    // a rational upper bound for |x| over the interval
    Rational abs_upper() const {
        Rational a = abs(lo), b = abs(hi);
        return a > b ? a : b;
    }
};

// The unique simplest rational (smallest denominator, then smallest |num|)
// in the open interval (lo, hi). Requires lo < hi.
Rational simplest_in(const Rational& lo, const Rational& hi);

}  // namespace pizza

#endif
