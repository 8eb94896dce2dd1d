#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pizza/numeric.hpp"
#include "pizza/zones.hpp"

using namespace pizza;

TEST_CASE("estimate_ord on the reference pairs") {
    struct Case {
        const char* f;
        const char* arc;
        double expect;
    };
    for (const Case& c : {Case{"x^8 + y^6", "y = 0", 8.0}, Case{"y^2 - x^3", "y = 2*x", 2.0},
                          Case{"min(x^2, y^3)", "x = y^(3/2)", 3.0}}) {
        FuncExpr f = parse_expr(c.f);
        Arc a = parse_arc(c.arc);
        OrdEstimate est = estimate_ord(f, a);
        INFO(c.f, " along ", c.arc);
        CHECK_FALSE(est.refused);
        CHECK_FALSE(est.underflow);
        CHECK(std::fabs(est.estimate - c.expect) <= 0.05);
        CHECK(est.residual <= 0.1);
    }
}

TEST_CASE("estimate agrees with the exact engine across corpus pairs") {
    for (const char* fs : {"x^8 + y^6", "y^2 - x^3", "x^2 + y^2", "(y - x^2)*(y + x^2)",
                           "y^3 - x^5", "(y^2 - x^3)*(y - x^2)", "x*y*(y - x)*(y + x)"}) {
        FuncExpr f = parse_expr(fs);
        for (const char* as : {"y = 1/3*x", "y = -1/2*x", "y = x^(3/2) + x^2", "x = 1/5*y"}) {
            Arc a = parse_arc(as);
            QInf q = ord_on_arc(f, a);
            if (q.is_inf() || q > QInf(Rational(12))) continue;
            OrdEstimate est = estimate_ord(f, a);
            INFO(fs, " along ", as);
            CHECK_FALSE(est.refused);
            CHECK(std::fabs(est.estimate - q.finite().to_double()) <= 0.05);
            CHECK(est.residual <= 0.1);
        }
    }
}

TEST_CASE("oracle refuses out-of-range orders") {
    // order 16 along the axis: beyond the double-precision trust range
    OrdEstimate est = estimate_ord(parse_expr("x^16 + y^6"), parse_arc("y = 0"));
    CHECK(est.refused);
    CHECK_FALSE(est.note.empty());
}

TEST_CASE("maximal-order zones of the min counterexample") {
    auto zones = maximal_order_zones(parse_expr("min(x^2, y^3)"));
    // special zones: both x-axis halves and the positive y-axis only
    REQUIRE(zones.size() == 3);
    for (const auto& z : zones) {
        CHECK(z.order.is_inf());
        CHECK(z.size.is_inf());
    }
    int y_axis = 0, x_axis = 0;
    for (const auto& z : zones) {
        if (z.representative.chart == Chart::y_graph) {
            CHECK(z.representative.half == 1);  // f is nonzero along y < 0
            ++y_axis;
        } else {
            ++x_axis;
        }
    }
    CHECK(x_axis == 2);
    CHECK(y_axis == 1);
}

TEST_CASE("per-side deformation profile of the switching arc") {
    DeformationProfile p =
        deformation_profile(parse_expr("min(x^2, y^3)"), parse_arc("x = y^(3/2)"));
    CHECK_FALSE(p.symmetric);
    // the order map itself is constant 3 on both sides; the asymmetry lives in
    // the zone connectivity, reported by zone_size_sides
    REQUIRE(p.plus.segments.size() == 1);
    CHECK(p.plus.segments[0].slope == 0);
    CHECK(p.plus.segments[0].intercept == Rational(3));
    REQUIRE(p.minus.segments.size() == 1);
    CHECK(p.minus.segments[0].slope == 0);
    CHECK(p.minus.segments[0].intercept == Rational(3));
}
