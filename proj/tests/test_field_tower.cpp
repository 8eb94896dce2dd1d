#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pizza/field.hpp"

using namespace pizza;

namespace {

UniPoly poly_q(std::initializer_list<long> asc) {  // coefficients ascending
    std::vector<FieldElement> c;
    for (long x : asc) c.emplace_back(x);
    return UniPoly(std::move(c));
}

// positive root of z^2 - 2 in [1, 2]
std::pair<TowerPtr, FieldElement> make_sqrt2() {
    return extend_tower(nullptr, poly_q({-2, 0, 1}), RatInterval(Rational(1), Rational(2)));
}

// xorshift generator for reproducible property tests
struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long range(long lo, long hi) {  // inclusive
        return lo + long(next() % uint64_t(hi - lo + 1));
    }
    Rational rat(long maxnum, long maxden) {
        return Rational(range(-maxnum, maxnum), range(1, maxden));
    }
};

}  // namespace

TEST_CASE("rational arithmetic basics") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK((Rational(2, 3) * Rational(3, 2)).is_one());
    CHECK(Rational(-7, 3).sign() == -1);
    CHECK(Rational::parse("5/6") == Rational(5, 6));
    CHECK(Rational(5, 6).str() == "5/6");
    CHECK(Rational(8, 2).str() == "4");
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(7, 2).floor() == BigInt(3));
    CHECK(Rational(-7, 2).floor() == BigInt(-4));
}

TEST_CASE("simplest rational in an interval") {
    CHECK(simplest_in(Rational(-1, 3), Rational(1, 7)) == Rational(0));
    CHECK(simplest_in(Rational(2), Rational(5, 2)) == Rational(7, 3));
    CHECK(simplest_in(Rational(0), Rational(1, 2)) == Rational(1, 3));
    CHECK(simplest_in(Rational(141, 100), Rational(142, 100)) == Rational(17, 12));
    CHECK(simplest_in(Rational(-5, 2), Rational(-2)) == Rational(-7, 3));
    // simplicity: nothing with smaller denominator lies inside
    Rational s = simplest_in(Rational(3, 7), Rational(4, 7));
    CHECK(s == Rational(1, 2));
}

TEST_CASE("field tower: rational fast paths") {
    FieldElement a(Rational(1, 2)), b(Rational(1, 3));
    CHECK((a + b).rational() == Rational(5, 6));
    FieldElement r(Rational(7, 5));
    CHECK((r + FieldElement(0)).rational() == Rational(7, 5));
    CHECK((FieldElement(Rational(2, 3)) * FieldElement(Rational(3, 2))).is_one());
    CHECK(FieldElement(Rational(-7, 3)).sign() == -1);
}

TEST_CASE("sqrt2 arithmetic and sign") {
    auto [t, r] = make_sqrt2();
    REQUIRE(t != nullptr);
    CHECK(t->degree() == 2);

    // r + r has representation 2r and positive sign; oracle: interval
    // arithmetic on [1.41, 1.42] puts the sum inside (2.8, 2.9)
    FieldElement s = r + r;
    CHECK(s.sign() == 1);
    RatInterval I = s.ival_refined(Rational(1, 1000));
    CHECK(I.lo > Rational(28, 10));
    CHECK(I.hi < Rational(29, 10));

    // defining relation: r*r = 2
    CHECK((r * r - FieldElement(2)).is_zero());
    CHECK((r * r).as_rational().has_value());

    // inverse(r) = r/2, verified by multiplying back
    FieldElement inv = r.inverse();
    CHECK((inv * r).is_one());
    CHECK((inv - r / FieldElement(2)).is_zero());

    // signs
    CHECK((r - FieldElement(1)).sign() == 1);
    CHECK((r * r - FieldElement(2)).sign() == 0);
    CHECK((r - FieldElement(Rational(3, 2))).sign() == -1);
}

TEST_CASE("degenerate and nested extensions") {
    // z - 3 on [2,4]: no deepening
    auto [t1, three] = extend_tower(nullptr, poly_q({-3, 1}), RatInterval(Rational(2), Rational(4)));
    CHECK(t1 == nullptr);
    CHECK(three.rational() == Rational(3));

    // rational root of a quadratic is detected and returned without deepening
    auto [t2, two] = extend_tower(nullptr, poly_q({-4, 0, 1}), RatInterval(Rational(1), Rational(3)));
    CHECK(t2 == nullptr);
    CHECK(two.rational() == Rational(2));

    // tower of height 2: adjoin sqrt(2), then z^2 - sqrt(2) => 2^{1/4}
    auto [ts, r] = make_sqrt2();
    UniPoly p(std::vector<FieldElement>{-r, FieldElement(0), FieldElement(1)});
    auto [t3, q] = extend_tower(ts, p, RatInterval(Rational(1), Rational(2)));
    REQUIRE(t3 != nullptr);
    CHECK(t3->height() == 2);
    RatInterval I = q.ival_refined(Rational(1, 100));
    CHECK(I.lo > Rational(11, 10));   // 2^{1/4} = 1.1892...
    CHECK(I.hi < Rational(13, 10));
    CHECK((q * q - r).is_zero());
    CHECK((q.pow(4) - FieldElement(2)).is_zero());
}

TEST_CASE("square-free requirement") {
    // (z-1)^2 is rejected
    CHECK_THROWS_AS(extend_tower(nullptr, poly_q({1, -2, 1}), RatInterval(Rational(0), Rational(2))),
                    std::invalid_argument);
    // non-isolating interval (two roots of z^2-2) is rejected
    CHECK_THROWS_AS(extend_tower(nullptr, poly_q({-2, 0, 1}), RatInterval(Rational(-2), Rational(2))),
                    std::invalid_argument);
}

TEST_CASE("root isolation") {
    SUBCASE("z^2 + 1: no real roots") {
        auto iso = isolate_real_roots(poly_q({1, 0, 1}));
        CHECK(iso.roots.empty());
        CHECK(iso.complex_pairs == 1);
    }
    SUBCASE("z^3 - z: roots -1, 0, 1") {
        auto iso = isolate_real_roots(poly_q({0, -1, 0, 1}));
        REQUIRE(iso.roots.size() == 3);
        CHECK(iso.complex_pairs == 0);
        std::vector<Rational> expect = {Rational(-1), Rational(0), Rational(1)};
        for (size_t i = 0; i < 3; ++i) {
            REQUIRE(iso.roots[i].exact.has_value());
            CHECK(iso.roots[i].exact->rational() == expect[i]);
            CHECK(iso.roots[i].multiplicity == 1);
        }
    }
    SUBCASE("(z-2)^2 (z^2-3): 2 double, +-sqrt(3) simple") {
        // expand: (z^2-4z+4)(z^2-3) = z^4 -4z^3 + z^2 + 12 z - 12
        auto iso = isolate_real_roots(poly_q({-12, 12, 1, -4, 1}));
        REQUIRE(iso.roots.size() == 3);
        CHECK(iso.complex_pairs == 0);
        // ascending: -sqrt3, sqrt3... wait 2 > sqrt(3): order is -sqrt3, sqrt3, 2
        CHECK_FALSE(iso.roots[0].exact.has_value());
        CHECK(iso.roots[0].multiplicity == 1);
        CHECK(iso.roots[0].iso.hi < Rational(0));
        CHECK_FALSE(iso.roots[1].exact.has_value());
        CHECK(iso.roots[1].multiplicity == 1);
        REQUIRE(iso.roots[2].exact.has_value());
        CHECK(iso.roots[2].exact->rational() == Rational(2));
        CHECK(iso.roots[2].multiplicity == 2);
        // the sqrt(3) factor really vanishes at the isolated value
        auto [t, s3] = extend_tower(nullptr, iso.roots[1].sqfree_factor, iso.roots[1].iso);
        CHECK((s3 * s3 - FieldElement(3)).is_zero());
    }
}

TEST_CASE("field axioms and sign consistency, randomized") {
    auto [t2, r2] = make_sqrt2();
    auto [t23, r3raw] = extend_tower(
        t2, UniPoly(std::vector<FieldElement>{FieldElement(-3), FieldElement(0), FieldElement(1)}),
        RatInterval(Rational(1), Rational(2)));
    REQUIRE(t23 != nullptr);
    CHECK(t23->height() == 2);
    FieldElement r2_lift = r2;  // sqrt2 as element of the taller tower contextually
    FieldElement r3 = r3raw;

    Rng rng(0x9E3779B97F4A7C15ull);
    auto random_elem = [&]() {
        // a + b*sqrt2 + c*sqrt3 + d*sqrt2*sqrt3 with small rational coefficients
        FieldElement a(rng.rat(4, 3)), b(rng.rat(4, 3)), c(rng.rat(4, 3)), d(rng.rat(4, 3));
        return a + b * r2_lift + c * r3 + d * r2_lift * r3;
    };
    for (int i = 0; i < 60; ++i) {
        FieldElement a = random_elem(), b = random_elem(), c = random_elem();
        CHECK(((a + b) + c - (a + (b + c))).is_zero());
        CHECK((a * b - b * a).is_zero());
        CHECK(((a * b) * c - a * (b * c)).is_zero());
        CHECK((a * (b + c) - (a * b + a * c)).is_zero());
        CHECK(a.sign() * b.sign() == (a * b).sign());
        if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    }
}

TEST_CASE("interval refinement never flips a reported sign") {
    auto [t, r] = make_sqrt2();
    FieldElement x = r - FieldElement(Rational(141, 100));
    int s0 = x.sign();
    for (int i = 0; i < 6; ++i) {
        t->refine(8);
        CHECK(x.ival().certified_sign() == s0);
    }
}

TEST_CASE("min_poly_over_Q") {
    auto [t, r] = make_sqrt2();
    auto mp = min_poly_over_Q(r);
    REQUIRE(mp.size() == 3);
    CHECK(mp[0] == Rational(-2));
    CHECK(mp[1] == Rational(0));
    CHECK(mp[2] == Rational(1));
    auto mp2 = min_poly_over_Q(r + FieldElement(1));  // root of z^2-2z-1
    REQUIRE(mp2.size() == 3);
    CHECK(mp2[0] == Rational(-1));
    CHECK(mp2[1] == Rational(-2));
}

TEST_CASE("cross-tower comparison") {
    auto [ta, r2] = make_sqrt2();
    auto [tb, r3] = extend_tower(nullptr, poly_q({-3, 0, 1}), RatInterval(Rational(1), Rational(2)));
    CHECK(cross_cmp(r2, r3) == -1);
    CHECK(cross_cmp(r3, r2) == 1);
    // equal values in unrelated towers
    auto [tc, r2b] = make_sqrt2();
    CHECK(tc.get() != ta.get());
    CHECK(cross_cmp(r2, r2b) == 0);
    CHECK(cross_cmp(-r2, r2b) == -1);
}

TEST_CASE("error paths: incompatible towers and division by zero") {
    auto [ta, r2] = make_sqrt2();
    auto [tb, r3] = extend_tower(nullptr, poly_q({-3, 0, 1}), RatInterval(Rational(1), Rational(2)));
    // unrelated towers cannot be combined arithmetically
    CHECK_THROWS_AS(r2 + r3, IncompatibleTowers);
    CHECK_THROWS_AS(r2 * r3, IncompatibleTowers);
    // but cross_cmp decides their order exactly
    CHECK(cross_cmp(r2, r3) < 0);
    CHECK_THROWS_AS(FieldElement(0).inverse(), std::domain_error);
    CHECK_THROWS_AS((r2 - r2).inverse(), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}
