#ifndef PIZZA_POLY_HPP
#define PIZZA_POLY_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pizza/field.hpp"

namespace pizza {

// graded lexicographic with x before y
struct GrlexXY {
    bool operator()(const std::pair<int, int>& a, const std::pair<int, int>& b) const {
        int da = a.first + a.second, db = b.first + b.second;
        if (da != db) return da < db;
        return a.first < b.first;
    }
};

// Bivariate polynomial in x, y. No zero coefficients are stored.
class BivarPoly {
  public:
    using Terms = std::map<std::pair<int, int>, FieldElement, GrlexXY>;

    BivarPoly() = default;
    static BivarPoly monomial(int i, int j, FieldElement c);
    static BivarPoly constant(FieldElement c) { return monomial(0, 0, std::move(c)); }
    static BivarPoly var_x() { return monomial(1, 0, FieldElement(1)); }
    static BivarPoly var_y() { return monomial(0, 1, FieldElement(1)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    FieldElement at(int i, int j) const;

    friend BivarPoly operator+(const BivarPoly& a, const BivarPoly& b);
    friend BivarPoly operator-(const BivarPoly& a, const BivarPoly& b);
    friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
    BivarPoly operator-() const;
    BivarPoly scaled(const FieldElement& s) const;
    BivarPoly pow(int e) const;
    friend bool operator==(const BivarPoly& a, const BivarPoly& b);

    int deg_x() const;
    int deg_y() const;
    int multiplicity() const;   // lowest total degree (INT_MAX-free: requires nonzero)
    BivarPoly lowest_form() const;  // tangent cone: terms of minimal total degree
    int x_mult() const;  // min i over terms
    int y_mult() const;  // min j over terms
    BivarPoly div_xpow(int a) const;
    BivarPoly div_ypow(int b) const;

    BivarPoly with_x_negated() const;  // x -> -x
    BivarPoly with_y_negated() const;  // y -> -y
    BivarPoly swapped() const;         // x <-> y
    BivarPoly d_dy() const;
    BivarPoly d_dx() const;

    // evaluation at rational/double points (doubles: compensated summation)
    FieldElement eval(const FieldElement& x, const FieldElement& y) const;
    double eval_double(double x, double y) const;

    // deterministic rendering in the CLI grammar (rational coefficients)
    std::string render() const;

  private:
    void insert(int i, int j, FieldElement c);
    Terms terms_;
};

// f0 = terms of minimal weighted degree v for weights (1, w); returns (f0, v)
std::pair<BivarPoly, Rational> quasi_homogeneous_part(const BivarPoly& f, const Rational& w);

// function expression: polynomial leaves combined by min / max
class FuncExpr {
  public:
    enum class Kind { leaf, min_node, max_node };

    static FuncExpr make_leaf(BivarPoly p);
    static FuncExpr make_pair(Kind k, FuncExpr a, FuncExpr b);

    Kind kind() const { return kind_; }
    bool is_leaf() const { return kind_ == Kind::leaf; }
    const BivarPoly& leaf() const { return *poly_; }
    const FuncExpr& left() const { return *a_; }
    const FuncExpr& right() const { return *b_; }

    std::vector<const BivarPoly*> leaves() const;
    friend bool operator==(const FuncExpr& a, const FuncExpr& b);

  private:
    Kind kind_ = Kind::leaf;
    std::shared_ptr<const BivarPoly> poly_;
    std::shared_ptr<const FuncExpr> a_, b_;
};

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(size_t p, const std::string& m)
        : std::runtime_error(m + " (at position " + std::to_string(p) + ")"), pos(p) {}
};

// Grammar:
//   expr := poly | "min(" expr "," expr ")" | "max(" expr "," expr ")"
//   poly := arithmetic over x, y with integer or p/q coefficients,
//           operators + - * ^ and parentheses; exponents are nonnegative
//           integers; no implicit multiplication.
// Every leaf must vanish at the origin and must not be identically zero.
FuncExpr parse_expr(const std::string& text);
std::string render_expr(const FuncExpr& e);

// square-free structure of f with respect to y over Q(x):
// f = (x-monomial and unit content) * prod parts[i].first ^ parts[i].second
// Requires rational coefficients.
std::vector<std::pair<BivarPoly, int>> y_squarefree_decomposition(const BivarPoly& f);

}  // namespace pizza

#endif
