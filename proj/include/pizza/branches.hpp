#ifndef PIZZA_BRANCHES_HPP
#define PIZZA_BRANCHES_HPP

#include <memory>

#include "pizza/arc.hpp"

namespace pizza {

// f transformed to a chart-half: F(u, w) with u the positive chart parameter
// and w the graph coordinate. x-chart: F(u,w) = f(half*u, w); y-chart:
// F(u,w) = f(w, half*u).
BivarPoly to_chart(const BivarPoly& f, Chart chart, int half);

// composition f(arc(u)) as an exact finite Puiseux polynomial
PuiseuxPoly compose_arc(const BivarPoly& chart_poly, const PuiseuxPoly& g);

struct BranchTruncation {
    Arc arc;
    int multiplicity = 1;  // multiplicity of the branch in f
    bool exact = false;    // arc.g is exactly a zero branch
    bool resolved = true;  // continuation determined by regular simple-root steps
    BivarPoly chart_poly;  // square-free chart-half polynomial owning this branch
};

struct ChartHalfCount {
    long weierstrass = 0;   // solutions tending to 0 over C, with multiplicity
    long real_mult = 0;     // real branch arcs owned by this chart-half
    long deferred = 0;      // real solutions owned by the other chart
    long complex_pairs = 0;
};

struct BranchSet {
    std::vector<BranchTruncation> branches;
    ChartHalfCount count[2][2];  // [chart][half > 0 ? 0 : 1]
    int x_axis_mult = 0;         // multiplicity of the y = 0 factor
    int y_axis_mult = 0;         // multiplicity of the x = 0 factor

    ChartHalfCount& at(Chart c, int half) {
        return count[c == Chart::x_graph ? 0 : 1][half > 0 ? 0 : 1];
    }
    const ChartHalfCount& at(Chart c, int half) const {
        return count[c == Chart::x_graph ? 0 : 1][half > 0 ? 0 : 1];
    }
};

// all real branch germs of f^{-1}(0) at the origin, in both charts, truncated
// past pairwise separation with regular continuations
BranchSet expand_branches(const BivarPoly& f);

// extend a resolved truncation by further regular Newton steps
void deepen(BranchTruncation& b, int steps);

// order of tangency of two branch germs (deepens truncations on demand)
QInf contact_order(const BranchTruncation& a, const BranchTruncation& b);
QInf contact_order(BranchTruncation a, const Arc& other);

// ---------------------------------------------------------------------------
// package tree: the exploration structure shared by the zone calculus and
// the pizza builder. One tree per (polynomial, tangency package); each node
// is a finite substitution prefix with its Newton polygon events.
// ---------------------------------------------------------------------------

struct TreeEvent {
    Rational T;                        // contact level of the event
    UniPoly epoly;                     // edge polynomial in the deformation coefficient
    std::vector<FieldElement> roots;   // its real nonzero roots, ascending
    bool is_stab = false;              // edge touching j = 0
    int j_lo = 0, j_hi = 0;
    Rational value_lo;                 // hull value at j_lo
};

struct PackageNode {
    PuiseuxPoly prefix;
    Rational dom_lo;      // last exponent of the prefix (1 for the direction node)
    NewtonPolygon np;
    std::optional<Rational> nu0;       // ord of f along the prefix (nullopt: exact branch)
    std::vector<TreeEvent> events;     // ascending T, only T > dom_lo
    // children[i][k] explores events[i].roots[k]
    std::vector<std::vector<std::unique_ptr<PackageNode>>> children;
    bool tail_collapsed = false;       // regular tail toward a single branch
    Rational tail_nu1;                 // certified ord of the z^1 coefficient on the tail
    PuiseuxPoly tail_branch;           // resolved truncation of that branch
    bool tail_branch_exact = false;
};

// Build the package tree of chart-half polynomial P for the package tangent
// to the direction with unit coefficient c1 (possibly 0 for the axis).
std::unique_ptr<PackageNode> build_package_tree(const BivarPoly& P, const FieldElement& c1);

// real tangent-cone root directions of P in this chart (unit coefficients c
// with |c| <= 1 for the x-chart, |c| < 1 for the y-chart)
std::vector<FieldElement> cone_root_directions(const BivarPoly& chart_poly, Chart chart);

}  // namespace pizza

#endif
