#include "pizza/arc.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

namespace pizza {

bool Arc::valid() const {
    for (const auto& [e, c] : g.terms())
        if (e < Rational(1)) return false;
    return half == 1 || half == -1;
}

FieldElement Arc::unit_coeff() const { return g.coeff_at(Rational(1)); }

std::pair<FieldElement, FieldElement> Arc::direction() const {
    FieldElement c = unit_coeff();
    if (chart == Chart::x_graph) return {FieldElement(long(half)), c};
    return {c, FieldElement(long(half))};
}

// ---------------------------------------------------------------------------
// directions and tangency
// ---------------------------------------------------------------------------

namespace {

// first exponent at which the expansions differ; nullopt if equal
std::optional<Rational> first_difference(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    size_t i = 0, j = 0;
    while (i < ta.size() || j < tb.size()) {
        if (i == ta.size()) return tb[j].first;
        if (j == tb.size()) return ta[i].first;
        if (ta[i].first < tb[j].first) return ta[i].first;
        if (tb[j].first < ta[i].first) return tb[j].first;
        if (!cross_eq(ta[i].second, tb[j].second)) return ta[i].first;
        ++i;
        ++j;
    }
    return std::nullopt;
}

// sign of a - b at their first difference (0 if equal)
int lex_cmp(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    size_t i = 0, j = 0;
    while (i < ta.size() || j < tb.size()) {
        if (i == ta.size()) return -tb[j].second.sign();
        if (j == tb.size()) return ta[i].second.sign();
        if (ta[i].first < tb[j].first) return ta[i].second.sign();
        if (tb[j].first < ta[i].first) return -tb[j].second.sign();
        int c = cross_cmp(ta[i].second, tb[j].second);
        if (c != 0) return c;
        ++i;
        ++j;
    }
    return 0;
}

}  // namespace

bool same_direction(const Arc& a, const Arc& b) {
    FieldElement ca = a.unit_coeff(), cb = b.unit_coeff();
    if (a.chart == b.chart) {
        if (a.half != b.half) return false;
        return cross_cmp(ca, cb) == 0;
    }
    // one x-chart, one y-chart: parallel iff ca * cb = half_a * half_b,
    // orientation iff sign matches
    const Arc& X = (a.chart == Chart::x_graph) ? a : b;
    const Arc& Y = (a.chart == Chart::x_graph) ? b : a;
    FieldElement cx = X.unit_coeff(), cy = Y.unit_coeff();
    if (cx.is_zero() || cy.is_zero()) return false;  // axis directions never shared
    long st = long(X.half) * long(Y.half);
    if (cross_cmp(cy, cx.inverse() * FieldElement(st)) != 0) return false;
    return long(Y.half) * cx.sign() > 0;
}

// ---------------------------------------------------------------------------
// cross-chart reparametrization: x-chart arc as a graph over |y|
// ---------------------------------------------------------------------------

namespace {

// For an x-chart arc (su, g(u)) with g of order exactly 1, expresses the
// x-coordinate as a Puiseux series in v = |y|, exactly up to exponent <= cap.
PuiseuxPoly xchart_as_ygraph(const Arc& A, const Rational& cap) {
    assert(A.chart == Chart::x_graph);
    const PuiseuxPoly& g = A.g;
    assert(g.ord() && *g.ord() == Rational(1));
    FieldElement c = g.lead_coeff();
    int tau = c.sign();  // the y-half the arc points into
    long q = g.exponent_denominator().to_long();

    // G(w) := g with u = w^q: integer exponents in w
    std::vector<PuiseuxPoly::Term> gt;
    for (const auto& [e, coef] : g.terms()) gt.push_back({e * Rational(q), coef});
    PuiseuxPoly G = PuiseuxPoly::from_terms(std::move(gt));

    // solve tau * G(w(s)) = s^q for w(s) = b1 s + ..., b1 = (tau c)^{-1/q} > 0
    FieldElement tc = FieldElement(long(tau)) * c;  // positive value
    FieldElement inv = tc.inverse();
    FieldElement b1;
    if (q == 1) {
        b1 = inv;
    } else {
        RatInterval I = inv.ival_refined(Rational(1, 4));
        Rational lo = I.lo < Rational(1) ? I.lo / Rational(2) : Rational(1, 2);
        if (lo.sign() <= 0) lo = Rational(1, 1000000);
        Rational hi = (I.hi > Rational(1) ? I.hi : Rational(1)) + Rational(1);
        std::vector<FieldElement> pc(q + 1);
        pc[0] = -inv;
        pc[q] = FieldElement(1);
        auto [t, root] = extend_tower(inv.tower(), UniPoly(std::move(pc)), RatInterval(lo, hi));
        b1 = root;
    }

    Rational scap = cap * Rational(q) + Rational(q) + Rational(2);
    PuiseuxPoly w = PuiseuxPoly::monomial(Rational(1), b1);
    FieldElement deriv = tc * FieldElement(q) * b1.pow(q - 1);  // d(tau G)/dw at lead
    long guard = 0;
    while (true) {
        if (++guard > 4096) throw RefinementLimit("cross-chart reparametrization stalled");
        // residual tau*G(w) - s^q, truncated
        PuiseuxPoly R;
        for (const auto& [e, coef] : G.terms()) {
            long k = e.num().to_long();  // integer exponent
            PuiseuxPoly wk = PuiseuxPoly::monomial(Rational(0), FieldElement(1));
            for (long t2 = 0; t2 < k; ++t2) wk = (wk * w).truncated_above(scap);
            R = R + wk.scaled(coef * FieldElement(long(tau)));
        }
        R = R - PuiseuxPoly::monomial(Rational(q), FieldElement(1));
        R = R.truncated_above(scap);
        if (R.is_zero()) break;
        Rational e = *R.ord();
        Rational enew = e - Rational(q) + Rational(1);
        if (enew > scap) break;
        FieldElement delta = -(R.lead_coeff() / deriv);
        w = w + PuiseuxPoly::monomial(enew, delta);
    }
    // x = half * u = half * w(s)^q, exponents back in v = s^q
    PuiseuxPoly xq = PuiseuxPoly::monomial(Rational(0), FieldElement(1));
    for (long t2 = 0; t2 < q; ++t2) xq = (xq * w).truncated_above(scap);
    std::vector<PuiseuxPoly::Term> xt;
    for (const auto& [e, coef] : xq.terms())
        xt.push_back({e / Rational(q), coef * FieldElement(long(A.half))});
    return PuiseuxPoly::from_terms(std::move(xt)).truncated_above(cap);
}

// contact of a tangent cross-chart pair, X in the x-chart and Y in the y-chart
QInf cross_tangent_tord(const Arc& X, const Arc& Y) {
    // single-term against single-term has an exact closed form
    if (X.g.size() == 1 && Y.g.size() == 1) {
        FieldElement cx = X.g.lead_coeff(), cy = Y.g.lead_coeff();
        long st = long(X.half) * long(Y.half);
        if (cross_eq(cy, cx.inverse() * FieldElement(st))) return QInf::infinity();
    }
    Rational cap = X.g.last_exponent() + Y.g.last_exponent() + Rational(2);
    for (int round = 0; round < 7; ++round) {
        PuiseuxPoly xa = xchart_as_ygraph(X, cap);
        std::optional<Rational> d = first_difference(xa, Y.g.truncated_above(cap));
        if (d && *d <= cap - Rational(1)) return QInf(*d);
        cap = cap * Rational(2);
    }
    throw RefinementLimit("cross-chart tangent contact undecided at depth cap");
}

}  // namespace

QInf tord(const Arc& a, const Arc& b) {
    if (a.chart == b.chart) {
        if (a.half != b.half) return QInf(Rational(1));
        std::optional<Rational> d = first_difference(a.g, b.g);
        if (!d) return QInf::infinity();
        return QInf(*d);
    }
    if (!same_direction(a, b)) return QInf(Rational(1));
    const Arc& X = (a.chart == Chart::x_graph) ? a : b;
    const Arc& Y = (a.chart == Chart::x_graph) ? b : a;
    return cross_tangent_tord(X, Y);
}

bool arcs_equal(const Arc& a, const Arc& b) { return tord(a, b).is_inf(); }

// ---------------------------------------------------------------------------
// counterclockwise order on the link
// ---------------------------------------------------------------------------

namespace {

// sector index, counterclockwise from angle 0 at direction (1, 0);
// arcs tangent to (1, 0) from below are placed at the very end (index 16)
int sector_rank(const Arc& a) {
    FieldElement c = a.unit_coeff();
    int sc = c.sign();
    bool xch = a.chart == Chart::x_graph;
    int h = a.half;
    if (xch) {
        // direction (h, c)
        int abs_cmp;  // |c| vs 1
        if (sc == 0)
            abs_cmp = -1;
        else {
            FieldElement d = (sc > 0 ? c : -c) - FieldElement(1);
            abs_cmp = d.sign();
        }
        if (h > 0) {
            if (sc == 0) {  // tangent to +x axis: side decides start vs end
                int side = a.g.is_zero() ? 0 : a.g.lead_coeff().sign();
                return side >= 0 ? 0 : 16;
            }
            if (sc > 0) return abs_cmp < 0 ? 1 : (abs_cmp == 0 ? 2 : 3);
            return abs_cmp < 0 ? 15 : (abs_cmp == 0 ? 14 : 13);
        }
        if (sc == 0) return 8;
        // direction (-1, c): upper-left for c < 0 (dy = c... careful: y-component is c)
        if (sc > 0) return abs_cmp < 0 ? 7 : (abs_cmp == 0 ? 6 : 5);
        return abs_cmp < 0 ? 9 : (abs_cmp == 0 ? 10 : 11);
    }
    // y-chart: direction (c, h)
    int abs_cmp;
    if (sc == 0)
        abs_cmp = -1;
    else {
        FieldElement d = (sc > 0 ? c : -c) - FieldElement(1);
        abs_cmp = d.sign();
    }
    if (h > 0) {
        if (sc == 0) return 4;
        if (sc > 0) return abs_cmp < 0 ? 3 : (abs_cmp == 0 ? 2 : 1);
        return abs_cmp < 0 ? 5 : (abs_cmp == 0 ? 6 : 7);
    }
    if (sc == 0) return 12;
    if (sc > 0) return abs_cmp < 0 ? 13 : (abs_cmp == 0 ? 14 : 15);
    return abs_cmp < 0 ? 11 : (abs_cmp == 0 ? 10 : 9);
}

// tangent of the angle against the local axis, used to order distinct
// directions inside one sector: t = dy/dx
std::optional<int> direction_cmp(const Arc& a, const Arc& b) {
    // returns ordering of angles within a shared sector, or nullopt if equal
    auto slope_value = [](const Arc& x) -> std::pair<FieldElement, bool> {
        // (value, is_dy_over_dx)
        FieldElement c = x.unit_coeff();
        if (x.chart == Chart::x_graph)
            return {c * FieldElement(long(x.half)), true};  // dy/dx = c/half
        return {c * FieldElement(long(x.half)), false};     // dx/dy = c/half
    };
    auto [va, ka] = slope_value(a);
    auto [vb, kb] = slope_value(b);
    int cmp;
    if (ka == kb) {
        cmp = cross_cmp(va, vb);
        if (!ka) cmp = -cmp;  // larger dx/dy means smaller angle within the sector
    } else {
        // compare dy/dx = va against 1/vb (or symmetric); within a shared
        // non-axis non-diagonal sector both values are nonzero
        const FieldElement& dydx = ka ? va : vb;
        const FieldElement& dxdy = ka ? vb : va;
        cmp = cross_cmp(dydx, dxdy.inverse());
        if (!ka) cmp = -cmp;
    }
    if (cmp == 0) return std::nullopt;
    // angle grows with dy/dx in every half-plane sector (atan branch-shifted)
    return cmp;
}

// vertical order within one tangency package mapped to ccw order
int package_ccw_cmp(const Arc& a, const Arc& b) {
    if (a.chart == b.chart) {
        int v = lex_cmp(a.g, b.g);  // +1: a above b (larger graph values)
        if (v == 0) return 0;
        bool ccw_is_up;
        if (a.chart == Chart::x_graph)
            ccw_is_up = a.half > 0;  // on x<0 the angle decreases as y grows
        else
            ccw_is_up = a.half < 0;  // on y>0 the angle decreases as x grows
        return ccw_is_up ? v : -v;
    }
    // cross-chart arcs sharing a tangent ray: compare x-coordinates over |y|
    const Arc& X = (a.chart == Chart::x_graph) ? a : b;
    const Arc& Y = (a.chart == Chart::x_graph) ? b : a;
    Rational cap = X.g.last_exponent() + Y.g.last_exponent() + Rational(2);
    for (int round = 0; round < 7; ++round) {
        PuiseuxPoly xa = xchart_as_ygraph(X, cap);
        int v = lex_cmp(xa, Y.g.truncated_above(cap));
        if (v != 0) {
            // v = +1: X has larger x at matched |y|
            int yhalf = (a.chart == Chart::x_graph) ? Y.half : a.half;
            int r = (yhalf > 0) ? -v : v;  // larger x = earlier ccw on y>0
            return (a.chart == Chart::x_graph) ? r : -r;
        }
        cap = cap * Rational(2);
    }
    return 0;  // equal germs
}

}  // namespace

bool ccw_less(const Arc& a, const Arc& b) {
    int ra = sector_rank(a), rb = sector_rank(b);
    if (ra != rb) return ra < rb;
    if (!same_direction(a, b)) {
        if (auto c = direction_cmp(a, b)) return *c < 0;
    }
    return package_ccw_cmp(a, b) < 0;
}

// ---------------------------------------------------------------------------
// parsing and rendering
// ---------------------------------------------------------------------------

namespace {

struct ArcLexer {
    const std::string& s;
    size_t pos = 0;
    explicit ArcLexer(const std::string& str) : s(str) {}
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw ParseError(pos, std::string("arc syntax: expected '") + c + "'");
    }
    BigInt number() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw ParseError(pos, "arc syntax: expected a number");
        return BigInt(s.substr(start, pos - start));
    }
    bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())); }
};

Rational parse_exponent(ArcLexer& lx) {
    if (!lx.eat('^')) return Rational(1);
    if (lx.eat('(')) {
        BigInt p = lx.number();
        Rational e(p);
        if (lx.eat('/')) e = Rational(p, lx.number());
        lx.expect(')');
        return e;
    }
    return Rational(lx.number());
}

}  // namespace

Arc parse_arc(const std::string& text) {
    ArcLexer lx(text);
    Arc arc;
    char lhs = lx.peek();
    if (lhs == 'y')
        arc.chart = Chart::x_graph;
    else if (lhs == 'x')
        arc.chart = Chart::y_graph;
    else
        throw ParseError(lx.pos, "arc syntax: expected 'y = ...' or 'x = ...'");
    ++lx.pos;
    lx.expect('=');
    char var = (arc.chart == Chart::x_graph) ? 'x' : 'y';

    std::vector<PuiseuxPoly::Term> terms;
    bool neg = lx.eat('-');
    if (!neg) lx.eat('+');
    while (true) {
        Rational coef(1);
        bool have_coef = false;
        if (lx.at_digit()) {
            BigInt p = lx.number();
            coef = Rational(p);
            size_t save = lx.pos;
            if (lx.eat('/')) {
                if (lx.at_digit())
                    coef = Rational(p, lx.number());
                else
                    lx.pos = save;
            }
            have_coef = true;
        }
        if (neg) coef = -coef;
        if (lx.peek() == var || lx.eat('*')) {
            lx.skip_ws();
            if (lx.peek() != var)
                throw ParseError(lx.pos, std::string("arc syntax: expected '") + var + "'");
            ++lx.pos;
            Rational e = parse_exponent(lx);
            if (e < Rational(1))
                throw ParseError(lx.pos, "arc exponents must be >= 1");
            terms.push_back({e, FieldElement(coef)});
        } else if (have_coef) {
            if (!coef.is_zero())
                throw ParseError(lx.pos, "arc syntax: nonzero constant term is not a germ");
        } else {
            throw ParseError(lx.pos, "arc syntax: expected a term");
        }
        if (lx.eat('+')) {
            neg = false;
        } else if (lx.eat('-')) {
            neg = true;
        } else {
            break;
        }
    }
    arc.g = PuiseuxPoly::from_terms(std::move(terms));
    arc.half = 1;
    lx.skip_ws();
    if (lx.pos < text.size()) {
        // optional "on x<0" style marker
        if (text.compare(lx.pos, 2, "on") != 0)
            throw ParseError(lx.pos, "arc syntax: trailing input");
        lx.pos += 2;
        lx.skip_ws();
        char mv = lx.peek();
        char expect_var = (arc.chart == Chart::x_graph) ? 'x' : 'y';
        if (mv != expect_var)
            throw ParseError(lx.pos, "arc half marker must use the chart coordinate");
        ++lx.pos;
        char cmp = lx.peek();
        if (cmp != '<' && cmp != '>') throw ParseError(lx.pos, "arc half marker: expected < or >");
        ++lx.pos;
        if (lx.peek() != '0') throw ParseError(lx.pos, "arc half marker: expected 0");
        ++lx.pos;
        arc.half = (cmp == '<') ? -1 : 1;
        lx.skip_ws();
        if (lx.pos != text.size()) throw ParseError(lx.pos, "arc syntax: trailing input");
    }
    if (!arc.valid()) throw ParseError(0, "arc exponents must be >= 1");
    return arc;
}

std::string render_arc(const Arc& a) {
    std::ostringstream os;
    char graph_var = (a.chart == Chart::x_graph) ? 'y' : 'x';
    char param_var = (a.chart == Chart::x_graph) ? 'x' : 'y';
    os << graph_var << " = ";
    if (a.g.is_zero()) {
        os << "0";
    } else {
        bool first = true;
        for (const auto& [e, c] : a.g.terms()) {
            std::string coef_str;
            bool neg = false;
            if (auto q = c.as_rational()) {
                neg = q->sign() < 0;
                Rational aq = abs(*q);
                if (!aq.is_one()) coef_str = aq.str() + "*";
            } else {
                // display-only: algebraic coefficients are approximated
                double d = c.to_double();
                neg = d < 0;
                std::ostringstream cs;
                cs.precision(12);
                cs << "~" << (neg ? -d : d) << "*";
                coef_str = cs.str();
            }
            if (first)
                os << (neg ? "-" : "");
            else
                os << (neg ? " - " : " + ");
            first = false;
            os << coef_str << param_var;
            if (!e.is_one()) {
                if (e.is_integer())
                    os << "^" << e.str();
                else
                    os << "^(" << e.str() << ")";
            }
        }
    }
    if (a.half < 0) os << " on " << param_var << "<0";
    return os.str();
}

}  // namespace pizza
