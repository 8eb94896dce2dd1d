#ifndef PIZZA_ARC_HPP
#define PIZZA_ARC_HPP

#include <string>

#include "pizza/puiseux.hpp"

namespace pizza {

// Rational extended with +infinity.
struct QInf {
    bool inf = false;
    Rational v;

    QInf() = default;
    QInf(Rational r) : v(std::move(r)) {}
    QInf(long n) : v(n) {}
    static QInf infinity() {
        QInf q;
        q.inf = true;
        return q;
    }
    bool is_inf() const { return inf; }
    const Rational& finite() const {
        if (inf) throw std::logic_error("QInf: infinite value");
        return v;
    }
    friend bool operator==(const QInf& a, const QInf& b) {
        if (a.inf || b.inf) return a.inf == b.inf;
        return a.v == b.v;
    }
    friend bool operator!=(const QInf& a, const QInf& b) { return !(a == b); }
    friend bool operator<(const QInf& a, const QInf& b) {
        if (a.inf) return false;
        if (b.inf) return true;
        return a.v < b.v;
    }
    friend bool operator<=(const QInf& a, const QInf& b) { return a < b || a == b; }
    friend bool operator>(const QInf& a, const QInf& b) { return b < a; }
    friend bool operator>=(const QInf& a, const QInf& b) { return b <= a; }
    std::string str() const { return inf ? "inf" : v.str(); }
};

enum class Chart { x_graph, y_graph };

// Finitely presented arc germ at the origin.
//
// x-chart: (x, y) = (half*u, g(u)), y-chart: (x, y) = (g(u), half*u), with
// u in (0, eps) the positive chart parameter (u = |x| resp. |y|). Exponents
// of g are rational and >= 1; the parametrization is bi-Lipschitz to the
// distance parametrization, so all orders can be measured in u.
struct Arc {
    Chart chart = Chart::x_graph;
    int half = 1;  // sign of the chart coordinate
    PuiseuxPoly g;

    bool valid() const;
    // exact tangent direction as a non-normalized vector (dx, dy)
    std::pair<FieldElement, FieldElement> direction() const;
    // slope data: coefficient of u^1 in g (zero if none)
    FieldElement unit_coeff() const;

    std::string str() const;
};

// order of tangency of two arc germs: +inf iff equal germs; 1 when the unit
// tangent directions differ; else the order of the difference of expansions
QInf tord(const Arc& a, const Arc& b);

bool same_direction(const Arc& a, const Arc& b);
bool arcs_equal(const Arc& a, const Arc& b);

// strict counterclockwise comparison of tangent rays; arcs with equal rays
// compare by expansion depth (vertical order within the tangency package)
bool ccw_less(const Arc& a, const Arc& b);

// Arc text syntax (all coefficients rational):
//   "y = c1*x^(p1/q1) + c2*x^(p2/q2) + ..."      (x-chart)
//   "x = c1*y^(p1/q1) + ..."                      (y-chart)
// with an optional trailing half marker "on x<0" / "on y<0" (positive half by
// default). Exponents apply to |x| resp. |y| on the negative halves.
Arc parse_arc(const std::string& text);
std::string render_arc(const Arc& a);

}  // namespace pizza

#endif
