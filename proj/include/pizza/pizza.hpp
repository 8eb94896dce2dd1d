#ifndef PIZZA_PIZZA_HPP
#define PIZZA_PIZZA_HPP

#include "pizza/zones.hpp"

namespace pizza {

// width function of one piece
struct Width {
    enum class Kind { affine, point, infinite_ } kind = Kind::point;
    Rational a, b;  // mu(q) = a*q + b on the order segment
    QInf point_value;

    static Width affine(Rational a_, Rational b_) {
        Width w;
        w.kind = Kind::affine;
        w.a = std::move(a_);
        w.b = std::move(b_);
        return w;
    }
    static Width point(QInf v) {
        Width w;
        w.kind = Kind::point;
        w.point_value = std::move(v);
        return w;
    }
    static Width infinite() {
        Width w;
        w.kind = Kind::infinite_;
        return w;
    }
    QInf at(const QInf& q) const;
    friend bool operator==(const Width& x, const Width& y);
};

struct OrderSegment {
    QInf lo, hi;
    bool lo_closed = true, hi_closed = true;
};

enum class PieceSign { plus, minus, mixed };

// One Hoelder triangle of the pizza with its order segment and width law.
struct PizzaPiece {
    Arc left, right;       // ccw boundary arcs
    bool left_branch = false, right_branch = false;    // boundary lies in f^{-1}(0)
    bool left_special = false, right_special = false;  // branch/switching boundary
    Rational beta;         // contact exponent of the boundaries
    QInf q_left, q_right;  // orders on the boundaries (ccw orientation)
    OrderSegment Q;
    Width width;
    PieceSign sign = PieceSign::plus;
    bool full_link = false;  // degenerate pizza without critical structure
};

struct Pizza {
    std::vector<PizzaPiece> pieces;  // cyclic, ccw; consecutive pieces share an arc
};

Pizza build_pizza(const FuncExpr& f);

struct ContinuityMismatch {
    size_t piece_a, piece_b;  // adjacent pieces (b follows a)
    QInf q;                   // order on the shared boundary
    QInf width_a, width_b;
};
struct ContinuityReport {
    bool continuous = true;
    std::vector<ContinuityMismatch> mismatches;
};
ContinuityReport check_continuity(const Pizza& p);

struct SlopeViolation {
    size_t piece;
    std::string what;
};
struct SlopeReport {
    bool ok = true;
    std::vector<SlopeViolation> violations;
    std::vector<Rational> slopes;  // distinct finite slopes seen on non-point pieces
};
// positive-slope check on maximal monotonicity zones (unions of adjacent
// pieces with a consistent order sweep); also asserts every finite slope is
// the reciprocal of a positive integer
SlopeReport check_monotone_slope(const Pizza& p, const FuncExpr& f);

struct CompareResult {
    bool equivalent = false;
    size_t rotation = 0;
    bool reflected = false;
    bool sign_flipped = false;
};
CompareResult compare_pizzas(const Pizza& a, const Pizza& b, bool ignore_signs = false);

// an arc strictly between two ccw-consecutive arcs (used for probes)
Arc arc_between(const Arc& left, const Arc& right);

}  // namespace pizza

#endif
