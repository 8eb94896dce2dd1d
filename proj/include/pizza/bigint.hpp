#ifndef PIZZA_BIGINT_HPP
#define PIZZA_BIGINT_HPP

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>

namespace pizza {

// Arbitrary-precision integer with value semantics (thin mpz_t wrapper).
class BigInt {
  public:
    BigInt() { mpz_init(v_); }
    BigInt(long n) { mpz_init_set_si(v_, n); }
    BigInt(int n) : BigInt(static_cast<long>(n)) {}
    explicit BigInt(const std::string& s) {
        if (mpz_init_set_str(v_, s.c_str(), 10) != 0) {
            mpz_clear(v_);
            throw std::invalid_argument("BigInt: bad decimal string: " + s);
        }
    }
    BigInt(const BigInt& o) { mpz_init_set(v_, o.v_); }
    BigInt(BigInt&& o) noexcept {
        mpz_init(v_);
        mpz_swap(v_, o.v_);
    }
    BigInt& operator=(const BigInt& o) {
        if (this != &o) mpz_set(v_, o.v_);
        return *this;
    }
    BigInt& operator=(BigInt&& o) noexcept {
        mpz_swap(v_, o.v_);
        return *this;
    }
    ~BigInt() { mpz_clear(v_); }

    friend BigInt operator+(const BigInt& a, const BigInt& b) { return apply(mpz_add, a, b); }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return apply(mpz_sub, a, b); }
    friend BigInt operator*(const BigInt& a, const BigInt& b) { return apply(mpz_mul, a, b); }
    BigInt operator-() const {
        BigInt r;
        mpz_neg(r.v_, v_);
        return r;
    }
    BigInt& operator+=(const BigInt& b) { mpz_add(v_, v_, b.v_); return *this; }
    BigInt& operator-=(const BigInt& b) { mpz_sub(v_, v_, b.v_); return *this; }
    BigInt& operator*=(const BigInt& b) { mpz_mul(v_, v_, b.v_); return *this; }

    // Truncating division pair; denominator must be nonzero.
    static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        BigInt q, r;
        mpz_tdiv_qr(q.v_, r.v_, a.v_, b.v_);
        return {std::move(q), std::move(r)};
    }
    // Exact division; throws if b does not divide a.
    friend BigInt div_exact(const BigInt& a, const BigInt& b) {
        auto [q, r] = BigInt::divmod(a, b);
        if (!r.is_zero()) throw std::domain_error("BigInt: inexact division");
        return std::move(q);
    }
    friend BigInt operator/(const BigInt& a, const BigInt& b) { return divmod(a, b).first; }
    friend BigInt operator%(const BigInt& a, const BigInt& b) { return divmod(a, b).second; }

    friend BigInt gcd(const BigInt& a, const BigInt& b) { return apply(mpz_gcd, a, b); }
    friend BigInt lcm(const BigInt& a, const BigInt& b) { return apply(mpz_lcm, a, b); }
    friend BigInt abs(const BigInt& a) {
        BigInt r;
        mpz_abs(r.v_, a.v_);
        return r;
    }
    BigInt pow(unsigned long e) const {
        BigInt r;
        mpz_pow_ui(r.v_, v_, e);
        return r;
    }
    friend BigInt pow2(unsigned long e) {  // 2^e
        BigInt r;
        mpz_ui_pow_ui(r.v_, 2, e);
        return r;
    }

    int sign() const { return mpz_sgn(v_); }
    bool is_zero() const { return mpz_sgn(v_) == 0; }
    bool is_one() const { return mpz_cmp_ui(v_, 1) == 0; }
    bool odd() const { return mpz_odd_p(v_) != 0; }

    friend int cmp(const BigInt& a, const BigInt& b) { return mpz_cmp(a.v_, b.v_); }
    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    bool fits_long() const { return mpz_fits_slong_p(v_) != 0; }
    long to_long() const {
        if (!fits_long()) throw std::overflow_error("BigInt: does not fit in long");
        return mpz_get_si(v_);
    }
    double to_double() const { return mpz_get_d(v_); }

    std::string str() const {
        char* s = mpz_get_str(nullptr, 10, v_);
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }
    // Number of bits in |a|; 0 for zero.
    size_t bits() const { return is_zero() ? 0 : mpz_sizeinbase(v_, 2); }

  private:
    static BigInt apply(void (*fn)(mpz_ptr, mpz_srcptr, mpz_srcptr), const BigInt& a,
                        const BigInt& b) {
        BigInt r;
        fn(r.v_, a.v_, b.v_);
        return r;
    }
    mpz_t v_;
};

std::ostream& operator<<(std::ostream& os, const BigInt& a);

}  // namespace pizza

#endif
