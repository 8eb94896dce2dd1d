#include "pizza/rational.hpp"

#include <cassert>
#include <ostream>

namespace pizza {

std::ostream& operator<<(std::ostream& os, const BigInt& a) { return os << a.str(); }
std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.str(); }

namespace {

// simplest rational in the open interval (lo, hi), 0 <= lo < hi,
// walking the shared continued-fraction prefix of the endpoints
Rational simplest_pos(const Rational& lo, const Rational& hi) {
    BigInt fl = lo.floor();
    Rational n(fl + BigInt(1));
    if (n < hi) return n;
    Rational flr(fl);
    if (lo == flr) {
        // (fl, hi) with hi - fl in (0, 1]: take fl + 1/m with minimal m
        Rational h = hi - flr;
        BigInt m = h.inverse().floor() + BigInt(1);
        return flr + Rational(BigInt(1), m);
    }
    Rational y = simplest_pos((hi - flr).inverse(), (lo - flr).inverse());
    return flr + y.inverse();
}

}  // namespace

Rational simplest_in(const Rational& lo, const Rational& hi) {
    assert(lo < hi);
    if (lo.sign() < 0 && hi.sign() > 0) return Rational(0);
    if (hi.sign() <= 0) return -simplest_in(-hi, -lo);
    return simplest_pos(lo, hi);
}

}  // namespace pizza
