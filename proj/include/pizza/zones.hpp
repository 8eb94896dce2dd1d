#ifndef PIZZA_ZONES_HPP
#define PIZZA_ZONES_HPP

#include "pizza/branches.hpp"

namespace pizza {

// f restricted to the arc: the exact leading-germ composition (for min/max
// the selected leaf's composition; selection by exact germ comparison)
PuiseuxPoly germ_on_arc(const FuncExpr& f, const Arc& a);

// ord_gamma f: exponent of the leading term, +inf iff the arc lies in f^{-1}(0)
QInf ord_on_arc(const FuncExpr& f, const Arc& a);

struct ProfileSegment {
    Rational lo;        // segment covers (lo, hi); lo is a breakpoint or the domain start
    QInf hi;
    long slope = 0;     // ord = intercept + slope * T
    Rational intercept;
};

struct ProfileSide {
    std::vector<ProfileSegment> segments;            // ascending T
    QInf stab_T;                                     // inf: never stabilizes (zero branch)
    QInf value;                                      // ord of f on the base arc
    std::vector<FieldElement> exceptional;           // coefficients with order jumps
};

// T |-> ord of f on the arc deformed by s*u^T for generic s, per side
struct DeformationProfile {
    Arc base;
    Rational domain_lo;
    ProfileSide plus, minus;
    bool symmetric = false;  // sides coincide (single-leaf input)
};

DeformationProfile deformation_profile(const FuncExpr& f, const Arc& a);

// mu(Z_a f): +inf on zero branches, else the contact at which the deformation
// profile stabilizes at ord_a f (Eq.-(4)-style T0 for the walk's terminal prefix)
QInf zone_size(const FuncExpr& f, const Arc& a);

struct SideSizes {
    QInf plus, minus;
    bool plus_blocked = false;   // stopped against arcs of different order
    bool minus_blocked = false;
};
SideSizes zone_size_sides(const FuncExpr& f, const Arc& a);

struct Witnesses {
    bool generic = false;
    Arc plus, minus;
    QInf mu;
    QInf ord_base, ord_plus, ord_minus;
    std::string note;
};
// two arcs flanking a at contact mu(Z_a f) with equal orders; for min/max
// inputs the construction may fail, and the report says why
Witnesses genericity_witnesses(const FuncExpr& f, const Arc& a);

bool is_maximal_order(const FuncExpr& f, const Arc& a);

struct ZoneDescriptor {
    Arc representative;
    QInf order;
    QInf size;
    bool maximal_order = true;
};
// all maximal-order zones: the special zones (real zero branches) plus the
// finitely many non-special ones found from package-tree stabilizations
std::vector<ZoneDescriptor> maximal_order_zones(const FuncExpr& f);

// smallest-denominator positive rational below every |value| in `avoid`
// (1 when the set is empty); used for generic deformation coefficients
Rational generic_coefficient(const std::vector<FieldElement>& avoid);

}  // namespace pizza

#endif
