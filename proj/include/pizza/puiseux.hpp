#ifndef PIZZA_PUISEUX_HPP
#define PIZZA_PUISEUX_HPP

#include <optional>
#include <string>
#include <vector>

#include "pizza/poly.hpp"

namespace pizza {

// Finite Puiseux polynomial: sum of b_i * u^{beta_i} with strictly ascending
// rational exponents and value-nonzero coefficients.
class PuiseuxPoly {
  public:
    using Term = std::pair<Rational, FieldElement>;

    PuiseuxPoly() = default;
    static PuiseuxPoly monomial(Rational e, FieldElement c);
    static PuiseuxPoly from_terms(std::vector<Term> terms);  // sorts and merges

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }

    std::optional<Rational> ord() const;       // exponent of the leading term
    const FieldElement& lead_coeff() const;    // coefficient at ord()
    Rational last_exponent() const;            // largest exponent (requires nonzero)
    FieldElement coeff_at(const Rational& e) const;

    friend PuiseuxPoly operator+(const PuiseuxPoly& a, const PuiseuxPoly& b);
    friend PuiseuxPoly operator-(const PuiseuxPoly& a, const PuiseuxPoly& b);
    friend PuiseuxPoly operator*(const PuiseuxPoly& a, const PuiseuxPoly& b);
    PuiseuxPoly operator-() const;
    PuiseuxPoly scaled(const FieldElement& s) const;
    PuiseuxPoly shifted(const Rational& e) const;  // multiply by u^e
    PuiseuxPoly pow(int e) const;
    friend bool operator==(const PuiseuxPoly& a, const PuiseuxPoly& b);

    PuiseuxPoly prefix(size_t n_terms) const;
    PuiseuxPoly truncated_above(const Rational& e) const;  // keep exponents <= e

    // common denominator of all exponents
    BigInt exponent_denominator() const;

    double eval_double(double u) const;

    std::string str(const std::string& var = "u") const;

  private:
    void normalize();
    std::vector<Term> t_;
};

// F(u, z) = sum_j c_j(u) z^j : the exact expansion of f(u, g(u) + z).
struct PuiseuxInZ {
    std::vector<PuiseuxPoly> cj;
    Rational precision;       // requested reporting precision (expansion itself is exact)
    bool z0_exactly_zero = false;

    int zdeg() const { return int(cj.size()) - 1; }
};

// exact substitution y = g(u) + z into f
PuiseuxInZ substitute(const BivarPoly& f, const PuiseuxPoly& g,
                      const Rational& precision = Rational(0));

// One lower-hull edge of the Newton polygon of F in the (ord, z-degree)
// plane. T is minus the edge slope: the breakpoint of min_j(nu_j + j*T).
struct NPEdge {
    Rational T;
    int j_lo = 0, j_hi = 0;
    UniPoly poly;       // sum over support points on the edge of lc(c_j) s^{j-j_lo}
    Rational value_lo;  // nu_{j_lo} (the hull value at j_lo)
};

struct NewtonPolygon {
    std::vector<std::pair<Rational, int>> support;  // (nu_j, j), ascending j
    std::optional<Rational> nu0;                    // ord of c_0; nullopt when c_0 == 0
    std::vector<NPEdge> edges;                      // ascending j_lo, descending T

    bool has_z_part() const { return !support.empty() && support.back().second >= 1; }
    // min over support of nu_j + j*T
    Rational pi(const Rational& T) const;
    // stabilization edge (j_lo == 0): present iff c_0 != 0 and some j >= 1 exists
    const NPEdge* stab_edge() const;
    std::optional<Rational> T0() const;  // its T
    std::optional<int> j0() const;       // its j_hi
};

NewtonPolygon newton_polygon(const PuiseuxInZ& F);

}  // namespace pizza

#endif
