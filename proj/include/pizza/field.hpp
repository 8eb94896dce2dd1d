#ifndef PIZZA_FIELD_HPP
#define PIZZA_FIELD_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pizza/rational.hpp"

namespace pizza {

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

struct IncompatibleTowers : std::runtime_error {
    IncompatibleTowers() : std::runtime_error("field elements live in incompatible towers") {}
};
struct RefinementLimit : std::runtime_error {
    explicit RefinementLimit(const std::string& m) : std::runtime_error(m) {}
};

// Exact real number in a tower of real algebraic extensions of Q.
//
// Representation: either a plain rational (tower() == nullptr), or a
// polynomial of degree >= 1 in the top generator of `tower()` with
// coefficients one level down. Reduced mod the defining polynomial,
// trailing zero coefficients trimmed, degree-0 forms collapsed to the
// parent level, so plain rationals are always stored as rationals.
//
// The value is the evaluation at the real root selected by each level's
// isolating interval. Defining polynomials are square-free but not
// necessarily irreducible, so a nonzero representation may still have
// value zero; is_zero()/sign() decide exactly (gcd certificate against
// the defining polynomial, interval refinement for the nonzero case).
class FieldElement {
  public:
    FieldElement() : rat_(0) {}
    FieldElement(Rational r) : rat_(std::move(r)) {}
    FieldElement(long n) : rat_(n) {}
    FieldElement(int n) : rat_(long(n)) {}

    // canonicalizing constructor: poly in the top generator of `t`
    static FieldElement make(TowerPtr t, std::vector<FieldElement> coeffs);
    static FieldElement generator(const TowerPtr& t);

    const TowerPtr& tower() const { return tower_; }
    bool is_rational() const { return tower_ == nullptr; }
    const Rational& rational() const {
        if (!is_rational()) throw std::logic_error("FieldElement: not rational");
        return rat_;
    }
    std::optional<Rational> as_rational() const {
        if (is_rational()) return rat_;
        return std::nullopt;
    }
    // coefficients over the parent tower (empty for rationals)
    const std::vector<FieldElement>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    int sign() const;
    bool is_one() const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    FieldElement operator-() const;
    FieldElement inverse() const;
    FieldElement pow(long e) const;
    FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
    FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
    FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

    // current enclosing interval (refine the tower for tighter ones)
    RatInterval ival() const;
    // enclosing interval with width <= w
    RatInterval ival_refined(const Rational& w) const;
    double to_double() const;

    std::string str() const;

  private:
    friend class Tower;
    void normalize();

    TowerPtr tower_;  // null => rational
    Rational rat_;    // value when rational
    std::vector<FieldElement> coeffs_;
};

// sign(a - b), allowing unrelated towers (decided by interval refinement
// with an exact conjugate test as fallback)
int cross_cmp(const FieldElement& a, const FieldElement& b);
inline bool cross_eq(const FieldElement& a, const FieldElement& b) { return cross_cmp(a, b) == 0; }

// Dense univariate polynomial over FieldElement coefficients,
// value-normalized: the stored leading coefficient is value-nonzero.
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<FieldElement> c) : c_(std::move(c)) { trim(); }
    static UniPoly constant(FieldElement v) { return UniPoly({std::move(v)}); }
    static UniPoly monomial(FieldElement v, int deg) {
        std::vector<FieldElement> c(deg + 1);
        c[deg] = std::move(v);
        return UniPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }  // -1 for zero poly
    const FieldElement& operator[](int i) const { return c_[i]; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    const FieldElement& lc() const { return c_.back(); }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    UniPoly operator-() const;
    UniPoly scaled(const FieldElement& s) const;
    UniPoly derivative() const;
    UniPoly monic() const;

    // division with remainder; divisor's leading coefficient must be invertible
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
    static UniPoly rem(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }
    static UniPoly div_exact(const UniPoly& a, const UniPoly& b);

    FieldElement eval(const FieldElement& x) const;
    RatInterval ival_at(const RatInterval& x) const;

    std::string str(const std::string& var = "z") const;

  private:
    void trim();
    std::vector<FieldElement> c_;
};

UniPoly gcd(const UniPoly& a, const UniPoly& b);  // monic
// g = u*a + v*b with g monic (or zero)
struct ExtGcd {
    UniPoly g, u, v;
};
ExtGcd ext_gcd(const UniPoly& a, const UniPoly& b);

// Yun square-free decomposition: p = lc * prod parts[i].first ^ parts[i].second
std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p);

// resultant of a and b
FieldElement resultant(const UniPoly& a, const UniPoly& b);

// One level of a real algebraic extension tower.
class Tower : public std::enable_shared_from_this<Tower> {
  public:
    // Use extend_tower() instead; public for make_shared.
    Tower(TowerPtr parent, UniPoly minpoly, RatInterval iso, int slo, int shi);

    const TowerPtr& parent() const { return parent_; }
    const UniPoly& minpoly() const { return minpoly_; }  // monic, square-free over parent
    int degree() const { return minpoly_.degree(); }
    int height() const { return height_; }

    // current isolating interval for the selected real root
    RatInterval iso() const;
    // bisect the isolating interval `rounds` times (logically const: the
    // selected root never changes, enclosures only narrow)
    void refine(int rounds) const;
    void refine_to_width(const Rational& w) const;

    static bool is_prefix(const TowerPtr& a, const TowerPtr& b);
    static TowerPtr join(const TowerPtr& a, const TowerPtr& b);  // deeper of the two

  private:
    TowerPtr parent_;
    UniPoly minpoly_;
    int height_;
    mutable RatInterval iso_;
    mutable int sign_lo_, sign_hi_;  // signs of minpoly at iso endpoints (0 once point)
};

// Adjoin the real root of p isolated by `iso` to `base`. For degree-1 p (or
// when the selected root is found to be rational) no level is added and the
// root is returned directly in the base tower.
std::pair<TowerPtr, FieldElement> extend_tower(const TowerPtr& base, const UniPoly& p,
                                               const RatInterval& iso);

struct RealRoot {
    std::optional<FieldElement> exact;  // set when the root lies in the base tower (e.g. rational)
    RatInterval iso;                    // isolating interval (point interval when exact)
    UniPoly sqfree_factor;              // square-free factor of p having this root
    int multiplicity = 1;
};

struct RootIsolation {
    std::vector<RealRoot> roots;  // ascending
    long complex_pairs = 0;       // counted with multiplicity
};

// All real roots of p (not identically zero) with multiplicities; complex
// roots are only counted. Square-free decomposition is applied internally.
RootIsolation isolate_real_roots(const UniPoly& p);

// Sturm-sequence count of distinct real roots of square-free g in (a, b].
int sturm_count(const std::vector<UniPoly>& chain, const Rational& a, const Rational& b);
std::vector<UniPoly> sturm_chain(const UniPoly& g);

// minimal polynomial of a over Q (monic, rational coefficients)
std::vector<Rational> min_poly_over_Q(const FieldElement& a);

// refinement hard cap: enclosure widths below 2^-max_refine_bits raise
// RefinementLimit (sign queries decide zero symbolically first, so this
// is a diagnostic, not a correctness device)
extern long max_refine_bits;

}  // namespace pizza

#endif
