#include "pizza/pizza.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace pizza {

QInf Width::at(const QInf& q) const {
    switch (kind) {
        case Kind::infinite_:
            return QInf::infinity();
        case Kind::point:
            return point_value;
        case Kind::affine:
            if (q.is_inf()) return a.sign() > 0 ? QInf::infinity() : QInf(b);
            return QInf(a * q.finite() + b);
    }
    return QInf();
}

bool operator==(const Width& x, const Width& y) {
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case Width::Kind::infinite_:
            return true;
        case Width::Kind::point:
            return x.point_value == y.point_value;
        case Width::Kind::affine:
            return x.a == y.a && x.b == y.b;
    }
    return false;
}

// a rational strictly between two exact values (order-insensitive)
Rational rational_between_elems(const FieldElement& x, const FieldElement& y);

// ---------------------------------------------------------------------------
// arcs between arcs
// ---------------------------------------------------------------------------

namespace {

bool ccw_is_up(const Arc& a) {
    return (a.chart == Chart::x_graph) ? a.half > 0 : a.half < 0;
}

// direction-level rank, 0..15 counterclockwise from angle 0
int dir_rank(const Arc& a) {
    FieldElement c = a.unit_coeff();
    int sc = c.sign();
    int abs_cmp = 0;
    if (sc != 0) {
        FieldElement d = (sc > 0 ? c : -c) - FieldElement(1);
        abs_cmp = d.sign();
    }
    bool xch = a.chart == Chart::x_graph;
    int h = a.half;
    if (xch) {
        if (h > 0) {
            if (sc == 0) return 0;
            if (sc > 0) return abs_cmp < 0 ? 1 : (abs_cmp == 0 ? 2 : 3);
            return abs_cmp < 0 ? 15 : (abs_cmp == 0 ? 14 : 13);
        }
        if (sc == 0) return 8;
        if (sc > 0) return abs_cmp < 0 ? 7 : (abs_cmp == 0 ? 6 : 5);
        return abs_cmp < 0 ? 9 : (abs_cmp == 0 ? 10 : 11);
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

// the eight cardinal/diagonal directions as arcs, counterclockwise
std::vector<Arc> cardinal_arcs() {
    auto mono = [](long c) { return PuiseuxPoly::monomial(Rational(1), FieldElement(c)); };
    return {
        Arc{Chart::x_graph, 1, PuiseuxPoly()},   // 0
        Arc{Chart::x_graph, 1, mono(1)},         // 45
        Arc{Chart::y_graph, 1, PuiseuxPoly()},   // 90
        Arc{Chart::x_graph, -1, mono(1)},        // 135: (-u, u)
        Arc{Chart::x_graph, -1, PuiseuxPoly()},  // 180
        Arc{Chart::x_graph, -1, mono(-1)},       // 225: (-u, -u)
        Arc{Chart::y_graph, -1, PuiseuxPoly()},  // 270
        Arc{Chart::x_graph, 1, mono(-1)},        // 315
    };
}

// cyclic strict betweenness at the direction level
bool dir_strictly_between(const Arc& lo, const Arc& d, const Arc& hi) {
    if (same_direction(lo, d) || same_direction(hi, d)) return false;
    auto dir_less = [](const Arc& x, const Arc& y) {
        if (same_direction(x, y)) return false;
        int rx = dir_rank(x), ry = dir_rank(y);
        if (rx != ry) return rx < ry;
        return ccw_less(x, y);  // same sector, distinct directions
    };
    if (dir_less(lo, hi)) return dir_less(lo, d) && dir_less(d, hi);
    return dir_less(lo, d) || dir_less(d, hi);
}

// tangent vector components (dx, dy) as exact elements
std::pair<FieldElement, FieldElement> dir_vec(const Arc& a) { return a.direction(); }

// a direction arc strictly inside the ccw sector (lo, hi)
Arc direction_between(const Arc& lo, const Arc& hi) {
    for (const Arc& c : cardinal_arcs())
        if (dir_strictly_between(lo, c, hi)) return c;
    auto [ax, ay] = dir_vec(lo);
    auto [bx, by] = dir_vec(hi);
    int sax = ax.sign(), sbx = bx.sign(), say = ay.sign(), sby = by.sign();
    if (sax != 0 && sax == sbx) {
        // shared dx sign: compare t = dy/dx, ccw = increasing t
        FieldElement ta = ay / ax, tb = by / bx;
        Rational t = rational_between_elems(ta, tb);
        // |t| <= 1 keeps the x-chart, otherwise pass to the y-chart
        if (abs(t) <= Rational(1)) {
            FieldElement c = FieldElement(t) * FieldElement(long(sax));
            return Arc{Chart::x_graph, sax,
                       c.is_zero() ? PuiseuxPoly() : PuiseuxPoly::monomial(Rational(1), c)};
        }
        int sy = t.sign() * sax;
        Rational cc = t.inverse() * Rational(sy);
        return Arc{Chart::y_graph, sy, PuiseuxPoly::monomial(Rational(1), FieldElement(cc))};
    }
    if (say != 0 && say == sby) {
        // shared dy sign: s = dx/dy decreases counterclockwise
        FieldElement sa = ax / ay, sb = bx / by;
        Rational s = rational_between_elems(sb, sa);
        if (abs(s) <= Rational(1)) {
            FieldElement c = FieldElement(s) * FieldElement(long(say));
            return Arc{Chart::y_graph, say,
                       c.is_zero() ? PuiseuxPoly() : PuiseuxPoly::monomial(Rational(1), c)};
        }
        int sx = s.sign() * say;
        Rational cc = s.inverse() * Rational(sx);
        return Arc{Chart::x_graph, sx, PuiseuxPoly::monomial(Rational(1), FieldElement(cc))};
    }
    throw std::logic_error("direction_between: no separating direction found");
}

}  // namespace

Rational rational_between_elems(const FieldElement& x, const FieldElement& y) {
    int c = cross_cmp(x, y);
    if (c == 0) throw std::logic_error("rational_between_elems: equal values");
    const FieldElement& lo = (c < 0) ? x : y;
    const FieldElement& hi = (c < 0) ? y : x;
    long guard = 0;
    while (true) {
        RatInterval Ix = lo.ival(), Iy = hi.ival();
        if (Ix.hi < Iy.lo) return simplest_in(Ix.hi, Iy.lo);
        if (Ix.is_point() && Iy.is_point() && Ix.lo < Iy.lo) return simplest_in(Ix.lo, Iy.lo);
        if (++guard > max_refine_bits) throw RefinementLimit("rational_between_elems cap");
        if (lo.tower()) lo.tower()->refine(2);
        if (hi.tower()) hi.tower()->refine(2);
    }
}

Arc arc_between(const Arc& left, const Arc& right) {
    if (!same_direction(left, right)) return direction_between(left, right);
    if (left.chart != right.chart || left.half != right.half)
        throw std::logic_error("arc_between: same direction across charts is not supported");
    // common prefix, then a coefficient strictly between at the first split
    const auto& ta = left.g.terms();
    const auto& tb = right.g.terms();
    size_t i = 0;
    std::vector<PuiseuxPoly::Term> common;
    while (i < ta.size() && i < tb.size() && ta[i].first == tb[i].first &&
           cross_eq(ta[i].second, tb[i].second)) {
        common.push_back(ta[i]);
        ++i;
    }
    Rational e;
    FieldElement ca(0), cb(0);
    if (i < ta.size() && (i >= tb.size() || ta[i].first <= tb[i].first)) e = ta[i].first;
    if (i < tb.size() && (i >= ta.size() || tb[i].first <= ta[i].first)) e = tb[i].first;
    if (i < ta.size() && ta[i].first == e) ca = ta[i].second;
    if (i < tb.size() && tb[i].first == e) cb = tb[i].second;
    int rel = cross_cmp(ca, cb);
    if (rel == 0) throw std::logic_error("arc_between: arcs are equal");
    // does the open coefficient interval contain 0?
    if (ca.sign() * cb.sign() < 0) {
        return Arc{left.chart, left.half, PuiseuxPoly::from_terms(std::move(common))};
    }
    Rational mid = rational_between_elems(ca, cb);
    if (mid.is_zero()) {
        return Arc{left.chart, left.half, PuiseuxPoly::from_terms(std::move(common))};
    }
    common.push_back({e, FieldElement(mid)});
    return Arc{left.chart, left.half, PuiseuxPoly::from_terms(std::move(common))};
}

// ---------------------------------------------------------------------------
// skeleton collection
// ---------------------------------------------------------------------------

namespace {

struct SkeletonArc {
    Arc arc;
    bool special = false;       // zero branch of some skeleton polynomial
    bool exact_branch = false;  // the expansion is exactly that branch
    BivarPoly branch_poly;      // chart-half polynomial owning the branch
    QInf q;                     // order of f on the boundary germ (cached)
};

void add_arc(std::vector<SkeletonArc>& out, Arc a, bool special, bool exact = false,
             BivarPoly poly = BivarPoly()) {
    for (SkeletonArc& s : out) {
        if (s.arc.chart == a.chart && s.arc.half == a.half && tord(s.arc, a).is_inf()) {
            if (special && !s.special) {
                s.special = true;
                s.exact_branch = exact;
                s.branch_poly = std::move(poly);
            }
            return;
        }
    }
    SkeletonArc s;
    s.arc = std::move(a);
    s.special = special;
    s.exact_branch = exact;
    s.branch_poly = std::move(poly);
    out.push_back(std::move(s));
}

// order of f on the boundary germ: resolved truncations are deepened until
// the order either stabilizes (finite) or keeps growing (the germ vanishes)
QInf boundary_order(const FuncExpr& f, const SkeletonArc& s) {
    if (!s.special || s.exact_branch) return ord_on_arc(f, s.arc);
    BranchTruncation b;
    b.arc = s.arc;
    b.exact = false;
    b.chart_poly = s.branch_poly;
    QInf prev = ord_on_arc(f, b.arc);
    for (int round = 0; round < 8; ++round) {
        deepen(b, 1);
        if (b.exact) return ord_on_arc(f, b.arc);
        QInf cur = ord_on_arc(f, b.arc);
        if (cur == prev) return cur;
        prev = cur;
    }
    return QInf::infinity();
}

// separator coefficients around the (sorted, real) roots of one event layer;
// gaps containing zero contribute one separator on each side of zero
std::vector<Rational> layer_separators(const std::vector<FieldElement>& roots) {
    std::vector<Rational> out;
    if (roots.empty()) {
        out.push_back(Rational(-1));
        out.push_back(Rational(1));
        return out;
    }
    // below the smallest root
    Rational lo_edge = roots.front().ival_refined(Rational(1)).lo - Rational(1);
    Rational hi_edge = roots.back().ival_refined(Rational(1)).hi + Rational(1);
    auto push_between = [&](const FieldElement& x, const FieldElement& y) {
        if (x.sign() < 0 && y.sign() > 0) {
            // the gap straddles zero: one separator on each side
            out.push_back(-generic_coefficient({x}));
            out.push_back(generic_coefficient({y}));
        } else {
            Rational m = rational_between_elems(x, y);
            if (m.is_zero()) {
                out.push_back(-generic_coefficient({x}));
                out.push_back(generic_coefficient({y}));
            } else {
                out.push_back(m);
            }
        }
    };
    if (roots.front().sign() > 0) {
        // all roots positive: the near-zero separator matters, the far side too
        out.push_back(generic_coefficient({roots.front()}));
        out.push_back(-Rational(1));
    } else {
        out.push_back(lo_edge);
    }
    for (size_t i = 0; i + 1 < roots.size(); ++i) push_between(roots[i], roots[i + 1]);
    if (roots.back().sign() < 0) {
        out.push_back(-generic_coefficient({roots.back()}));
        out.push_back(Rational(1));
    } else {
        out.push_back(hi_edge);
    }
    return out;
}

void collect_node_arcs(const PackageNode* node, const BivarPoly& P, Chart chart, int half,
                       std::vector<SkeletonArc>& out) {
    if (!node->nu0 && !node->tail_collapsed) {
        // exact zero-branch prefix
        add_arc(out, Arc{chart, half, node->prefix}, true, true, P);
    }
    for (size_t i = 0; i < node->events.size(); ++i) {
        const TreeEvent& ev = node->events[i];
        for (const Rational& c : layer_separators(ev.roots))
            add_arc(out, Arc{chart, half, node->prefix + PuiseuxPoly::monomial(ev.T, FieldElement(c))},
                    false);
        if (!node->tail_collapsed) {
            for (const auto& child : node->children[i])
                collect_node_arcs(child.get(), P, chart, half, out);
        }
    }
    if (node->tail_collapsed)
        add_arc(out, Arc{chart, half, node->tail_branch}, true, node->tail_branch_exact, P);
}

}  // namespace

// ---------------------------------------------------------------------------
// piece construction
// ---------------------------------------------------------------------------

namespace {

QInf width_at_probe(const FuncExpr& f, const Arc& probe, const Arc& left, const Arc& right) {
    if (f.is_leaf()) return zone_size(f, probe);
    SideSizes ss = zone_size_sides(f, probe);
    int sigma_right = ccw_is_up(probe) ? 1 : -1;
    QInf mu_right = sigma_right > 0 ? ss.plus : ss.minus;
    QInf mu_left = sigma_right > 0 ? ss.minus : ss.plus;
    QInf tr = tord(probe, right), tl = tord(probe, left);
    if (tr > mu_right) mu_right = tr;  // clip at the piece boundary
    if (tl > mu_left) mu_left = tl;
    return mu_right < mu_left ? mu_right : mu_left;
}

int sign_on_arc(const FuncExpr& f, const Arc& a) {
    PuiseuxPoly g = germ_on_arc(f, a);
    if (g.is_zero()) return 0;
    return g.lead_coeff().sign();
}

struct PieceBuildError : std::runtime_error {
    Arc offending;
    explicit PieceBuildError(Arc a)
        : std::runtime_error("piece probe violated the affine width prediction"),
          offending(std::move(a)) {}
};

// an arc just inside the piece next to a boundary arc; `vert` is the
// value-order offset direction (graph coordinate up or down)
Arc probe_near(const FuncExpr& f, const Arc& boundary, int vert) {
    auto build = [&](const Rational& eps) {
        PuiseuxPoly g;
        if (boundary.g.is_zero()) {
            g = PuiseuxPoly::monomial(Rational(2), FieldElement(vert > 0 ? eps : -eps));
        } else {
            Rational last_e = boundary.g.last_exponent();
            FieldElement last_c = boundary.g.coeff_at(last_e);
            g = boundary.g.truncated_above(last_e - Rational(1, 1000000)) +
                PuiseuxPoly::monomial(last_e,
                                      last_c + FieldElement(vert > 0 ? eps : -eps));
        }
        return Arc{boundary.chart, boundary.half, g};
    };
    // shrink until the order stabilizes (placement heuristic; all values exact)
    Rational eps(1, 4);
    Arc probe = build(eps);
    QInf q = ord_on_arc(f, probe);
    for (int i = 0; i < 8; ++i) {
        eps = eps / Rational(16);
        Arc next = build(eps);
        QInf q2 = ord_on_arc(f, next);
        if (q2 == q) return next;
        probe = next;
        q = q2;
    }
    return probe;
}

// nearby arc at one contact level deeper, used next to branch boundaries
Arc probe_beyond(const Arc& boundary, int vert, const Rational& depth_offset) {
    Rational T = (boundary.g.is_zero() ? Rational(1) : boundary.g.last_exponent()) +
                 depth_offset;
    PuiseuxPoly g = boundary.g + PuiseuxPoly::monomial(
                                     T, FieldElement(vert > 0 ? Rational(1, 3) : Rational(-1, 3)));
    return Arc{boundary.chart, boundary.half, g};
}

PizzaPiece make_piece(const FuncExpr& f, const SkeletonArc& L, const SkeletonArc& R) {
    PizzaPiece p;
    p.left = L.arc;
    p.right = R.arc;
    p.left_branch = L.q.is_inf();
    p.right_branch = R.q.is_inf();
    p.left_special = L.special;
    p.right_special = R.special;
    QInf beta = tord(L.arc, R.arc);
    p.beta = beta.is_inf() ? Rational(1) : beta.finite();
    p.q_left = L.q;
    p.q_right = R.q;
    p.Q.lo = p.q_left < p.q_right ? p.q_left : p.q_right;
    p.Q.hi = p.q_left < p.q_right ? p.q_right : p.q_left;

    Arc probe1 = arc_between(L.arc, R.arc);
    QInf q1 = ord_on_arc(f, probe1);
    int s1 = sign_on_arc(f, probe1);
    if (q1.is_inf()) throw PieceBuildError(probe1);  // a zero branch was missed

    if (p.q_left == p.q_right && q1 == p.q_left) {
        p.width = Width::point(width_at_probe(f, probe1, L.arc, R.arc));
        p.sign = s1 > 0 ? PieceSign::plus : (s1 < 0 ? PieceSign::minus : PieceSign::mixed);
        return p;
    }

    // probes hugging each boundary: inside the piece means ccw-after L and
    // ccw-before R in the vertical (graph value) order
    int vert_after_L = ccw_is_up(L.arc) ? 1 : -1;
    int vert_before_R = ccw_is_up(R.arc) ? -1 : 1;
    Arc probeL = L.q.is_inf() ? probe_beyond(L.arc, vert_after_L, Rational(1))
                              : probe_near(f, L.arc, vert_after_L);
    Arc probeR = R.q.is_inf() ? probe_beyond(R.arc, vert_before_R, Rational(1))
                              : probe_near(f, R.arc, vert_before_R);
    QInf qL = ord_on_arc(f, probeL), qR = ord_on_arc(f, probeR);
    int sL = sign_on_arc(f, probeL), sR = sign_on_arc(f, probeR);
    if (qL.is_inf()) throw PieceBuildError(probeL);
    if (qR.is_inf()) throw PieceBuildError(probeR);

    struct Pt {
        Arc arc;
        QInf q;
    };
    std::vector<Pt> pts = {{probe1, q1}, {probeL, qL}, {probeR, qR}};
    if (R.q.is_inf()) {
        Arc deeper = probe_beyond(R.arc, vert_before_R, Rational(2));
        pts.push_back({deeper, ord_on_arc(f, deeper)});
    }
    if (L.q.is_inf()) {
        Arc deeper = probe_beyond(L.arc, vert_after_L, Rational(2));
        pts.push_back({deeper, ord_on_arc(f, deeper)});
    }

    // fit from the first pair with distinct orders, verify on the rest
    int i1 = -1, i2 = -1;
    for (size_t i = 0; i < pts.size() && i2 < 0; ++i)
        for (size_t j = i + 1; j < pts.size() && i2 < 0; ++j)
            if (pts[i].q != pts[j].q && !pts[i].q.is_inf() && !pts[j].q.is_inf()) {
                i1 = int(i);
                i2 = int(j);
            }
    if (i2 < 0) throw PieceBuildError(probe1);
    QInf mu1 = width_at_probe(f, pts[size_t(i1)].arc, L.arc, R.arc);
    QInf mu2 = width_at_probe(f, pts[size_t(i2)].arc, L.arc, R.arc);
    if (mu1.is_inf() || mu2.is_inf()) throw PieceBuildError(probe1);
    Rational qa = pts[size_t(i1)].q.finite(), qb = pts[size_t(i2)].q.finite();
    Rational a = (mu2.finite() - mu1.finite()) / (qb - qa);
    Rational b = mu1.finite() - a * qa;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (int(i) == i1 || int(i) == i2) continue;
        if (pts[i].q.is_inf()) throw PieceBuildError(pts[i].arc);
        QInf mu = width_at_probe(f, pts[i].arc, L.arc, R.arc);
        if (mu != QInf(a * pts[i].q.finite() + b)) throw PieceBuildError(pts[i].arc);
    }
    p.width = Width::affine(a, b);
    bool same_sign = (s1 == sL && sL == sR && s1 != 0);
    p.sign = !same_sign ? PieceSign::mixed : (s1 > 0 ? PieceSign::plus : PieceSign::minus);
    return p;
}

}  // namespace

Pizza build_pizza(const FuncExpr& f) {
    std::vector<const BivarPoly*> ls = f.leaves();
    std::vector<BivarPoly> polys;
    for (const BivarPoly* p : ls) polys.push_back(*p);
    for (size_t i = 0; i < ls.size(); ++i)
        for (size_t j = i + 1; j < ls.size(); ++j) {
            BivarPoly d = *ls[i] - *ls[j];
            if (!d.is_zero()) polys.push_back(d);
        }

    std::vector<SkeletonArc> skeleton;
    std::vector<Arc> package_dirs;
    for (const BivarPoly& p : polys) {
        for (Chart ch : {Chart::x_graph, Chart::y_graph}) {
            for (int h : {1, -1}) {
                BivarPoly P = to_chart(p, ch, h);
                for (const FieldElement& c : cone_root_directions(P, ch)) {
                    Arc dir{ch, h,
                            c.is_zero() ? PuiseuxPoly() : PuiseuxPoly::monomial(Rational(1), c)};
                    bool seen = false;
                    for (const Arc& d : package_dirs)
                        if (same_direction(d, dir)) seen = true;
                    if (!seen) package_dirs.push_back(dir);
                    auto tree = build_package_tree(P, c);
                    collect_node_arcs(tree.get(), P, ch, h, skeleton);
                }
            }
        }
    }

    Pizza out;
    if (skeleton.empty()) {
        // no critical structure: one piece covering the whole link
        Arc rep{Chart::x_graph, 1, PuiseuxPoly()};
        PizzaPiece p;
        p.left = p.right = rep;
        p.beta = Rational(1);
        QInf q = ord_on_arc(f, rep);
        p.q_left = p.q_right = q;
        p.Q.lo = p.Q.hi = q;
        p.width = Width::point(QInf(Rational(1)));
        int s = sign_on_arc(f, rep);
        p.sign = s > 0 ? PieceSign::plus : (s < 0 ? PieceSign::minus : PieceSign::mixed);
        p.full_link = true;
        out.pieces.push_back(std::move(p));
        return out;
    }

    // one mid-direction separator per gap between consecutive package directions
    std::sort(package_dirs.begin(), package_dirs.end(),
              [](const Arc& a, const Arc& b) { return ccw_less(a, b); });
    for (size_t i = 0; i < package_dirs.size(); ++i) {
        const Arc& a = package_dirs[i];
        const Arc& b = package_dirs[(i + 1) % package_dirs.size()];
        if (package_dirs.size() == 1) {
            // a single package: split the remaining circle with two cardinals
            for (const Arc& c : cardinal_arcs())
                if (!same_direction(a, c)) {
                    add_arc(skeleton, c, false);
                    break;
                }
            Arc opp = a;
            opp.half = -opp.half;
            opp.g = a.g.scaled(FieldElement(-1));
            add_arc(skeleton, opp, false);
            break;
        }
        if (same_direction(a, b)) continue;
        add_arc(skeleton, direction_between(a, b), false);
    }

    std::vector<std::pair<SkeletonArc, SkeletonArc>> ends;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 8) throw std::logic_error("build_pizza: subdivision did not settle");
        std::sort(skeleton.begin(), skeleton.end(),
                  [](const SkeletonArc& a, const SkeletonArc& b) { return ccw_less(a.arc, b.arc); });
        for (SkeletonArc& s : skeleton) s.q = boundary_order(f, s);
        try {
            out.pieces.clear();
            ends.clear();
            for (size_t i = 0; i < skeleton.size(); ++i) {
                const SkeletonArc& L = skeleton[i];
                const SkeletonArc& R = skeleton[(i + 1) % skeleton.size()];
                out.pieces.push_back(make_piece(f, L, R));
                ends.push_back({L, R});
            }
            break;
        } catch (const PieceBuildError& e) {
            add_arc(skeleton, e.offending, false);
        }
    }

    // normalization: fuse pieces that continue one affine law monotonically
    auto dir_of = [](const PizzaPiece& p) -> int {
        if (p.q_left == p.q_right) return 0;
        return p.q_left < p.q_right ? 1 : -1;
    };
    auto try_merge = [&](const PizzaPiece& A, const PizzaPiece& B,
                         PizzaPiece& M) -> bool {
        if (A.sign != B.sign) return false;
        if (A.right_branch || A.right_special) return false;  // special boundaries stay
        int da = dir_of(A), db = dir_of(B);
        if (da != 0 && db != 0 && da != db) return false;
        Width law;
        if (A.width.kind == Width::Kind::affine && B.width.kind == Width::Kind::affine) {
            if (!(A.width == B.width)) return false;
            law = A.width;
        } else if (A.width.kind == Width::Kind::point && B.width.kind == Width::Kind::affine) {
            if (B.width.at(A.q_right) != A.width.point_value) return false;
            law = B.width;
        } else if (A.width.kind == Width::Kind::affine && B.width.kind == Width::Kind::point) {
            if (A.width.at(B.q_left) != B.width.point_value) return false;
            law = A.width;
        } else if (A.width.kind == Width::Kind::point && B.width.kind == Width::Kind::point) {
            if (!(A.width == B.width)) return false;
            law = A.width;
        } else {
            return false;
        }
        M = A;
        M.right = B.right;
        M.right_branch = B.right_branch;
        M.right_special = B.right_special;
        M.q_right = B.q_right;
        QInf t = tord(M.left, M.right);
        M.beta = t.is_inf() ? Rational(1) : t.finite();
        M.Q.lo = A.Q.lo < B.Q.lo ? A.Q.lo : B.Q.lo;
        M.Q.hi = A.Q.hi < B.Q.hi ? B.Q.hi : A.Q.hi;
        M.width = law;
        if (M.Q.lo == M.Q.hi && law.kind == Width::Kind::affine)
            M.width = Width::point(law.at(M.Q.lo));
        return true;
    };
    bool analytic = f.is_leaf();
    bool changed = true;
    while (changed && out.pieces.size() > 1) {
        changed = false;
        for (size_t i = 0; i < out.pieces.size() && out.pieces.size() > 1; ++i) {
            size_t j = (i + 1) % out.pieces.size();
            PizzaPiece merged;
            bool ok = try_merge(out.pieces[i], out.pieces[j], merged);
            if (!ok && !analytic) {
                // widths of small pieces depend on their boundaries for
                // min/max inputs; re-derive the candidate union from probes
                const PizzaPiece& A = out.pieces[i];
                const PizzaPiece& B = out.pieces[j];
                int da = (A.q_left == A.q_right) ? 0 : (A.q_left < A.q_right ? 1 : -1);
                int db = (B.q_left == B.q_right) ? 0 : (B.q_left < B.q_right ? 1 : -1);
                if (A.sign == B.sign && !A.right_special && !A.right_branch &&
                    (da == 0 || db == 0 || da == db)) {
                    try {
                        merged = make_piece(f, ends[i].first, ends[j].second);
                        ok = merged.sign == A.sign;
                    } catch (const PieceBuildError&) {
                        ok = false;
                    }
                }
            }
            if (ok) {
                out.pieces[i] = std::move(merged);
                ends[i] = {ends[i].first, ends[j].second};
                out.pieces.erase(out.pieces.begin() + long(j));
                ends.erase(ends.begin() + long(j));
                changed = true;
                break;
            }
        }
    }

    // canonical rotation: start at the ccw-least left boundary
    size_t best = 0;
    for (size_t i = 1; i < out.pieces.size(); ++i)
        if (ccw_less(out.pieces[i].left, out.pieces[best].left)) best = i;
    std::rotate(out.pieces.begin(), out.pieces.begin() + long(best), out.pieces.end());
    return out;
}

// ---------------------------------------------------------------------------
// the two structure theorems and the comparator
// ---------------------------------------------------------------------------

ContinuityReport check_continuity(const Pizza& p) {
    ContinuityReport rep;
    if (p.pieces.size() <= 1) return rep;
    for (size_t i = 0; i < p.pieces.size(); ++i) {
        size_t j = (i + 1) % p.pieces.size();
        const PizzaPiece& A = p.pieces[i];
        const PizzaPiece& B = p.pieces[j];
        QInf q = A.q_right;  // order on the shared boundary
        QInf wa = A.width.at(q);
        QInf wb = B.width.at(q);
        if (wa != wb) {
            rep.continuous = false;
            rep.mismatches.push_back({i, j, q, wa, wb});
        }
    }
    return rep;
}

SlopeReport check_monotone_slope(const Pizza& p, const FuncExpr& f) {
    (void)f;
    SlopeReport rep;
    auto dir_of = [](const PizzaPiece& x) -> int {
        if (x.q_left == x.q_right) return 0;
        return x.q_left < x.q_right ? 1 : -1;
    };
    // maximal runs of consistently monotone pieces
    size_t n = p.pieces.size();
    std::vector<int> dirs(n);
    for (size_t i = 0; i < n; ++i) dirs[i] = dir_of(p.pieces[i]);
    // find run boundaries: positions where the sweep direction reverses
    std::vector<size_t> starts;
    for (size_t i = 0; i < n; ++i) {
        int prev = 0;
        for (size_t back = 1; back <= n; ++back) {
            int d = dirs[(i + n - back) % n];
            if (d != 0) {
                prev = d;
                break;
            }
        }
        if (dirs[i] != 0 && prev != 0 && dirs[i] != prev) starts.push_back(i);
    }
    if (starts.empty()) starts.push_back(0);
    for (size_t s = 0; s < starts.size(); ++s) {
        size_t begin = starts[s];
        size_t end = starts[(s + 1) % starts.size()];  // exclusive
        QInf qmin, qmax;
        bool first = true;
        std::vector<size_t> members;
        for (size_t i = begin; i != end || first; i = (i + 1) % n) {
            members.push_back(i);
            const PizzaPiece& piece = p.pieces[i];
            if (first || piece.Q.lo < qmin) qmin = piece.Q.lo;
            if (first || qmax < piece.Q.hi) qmax = piece.Q.hi;
            first = false;
            if (members.size() >= n) break;
        }
        if (qmin == qmax) continue;  // the zone's order segment is a point
        for (size_t i : members) {
            const PizzaPiece& piece = p.pieces[i];
            if (piece.Q.lo == piece.Q.hi) continue;
            if (piece.width.kind != Width::Kind::affine) {
                rep.ok = false;
                rep.violations.push_back({i, "non-affine width on a non-point segment"});
                continue;
            }
            if (piece.width.a.sign() <= 0) {
                rep.ok = false;
                rep.violations.push_back({i, "width slope " + piece.width.a.str() +
                                                 " is not positive"});
            }
            if (!(piece.width.a.num() == BigInt(1)) || piece.width.a.den().sign() <= 0) {
                rep.ok = false;
                rep.violations.push_back({i, "width slope " + piece.width.a.str() +
                                                 " is not a reciprocal positive integer"});
            }
            bool seen = false;
            for (const Rational& sl : rep.slopes) seen = seen || sl == piece.width.a;
            if (!seen) rep.slopes.push_back(piece.width.a);
        }
    }
    return rep;
}

namespace {

struct PieceKey {
    Rational beta;
    QInf qlo, qhi;
    Width width;
    PieceSign sign;
};

bool key_eq(const PieceKey& a, const PieceKey& b, bool ignore_signs, bool flip) {
    if (!(a.beta == b.beta && a.qlo == b.qlo && a.qhi == b.qhi && a.width == b.width))
        return false;
    if (ignore_signs) return true;
    PieceSign bs = b.sign;
    if (flip) {
        if (bs == PieceSign::plus)
            bs = PieceSign::minus;
        else if (bs == PieceSign::minus)
            bs = PieceSign::plus;
    }
    return a.sign == bs;
}

std::vector<PieceKey> keys_of(const Pizza& p) {
    std::vector<PieceKey> out;
    for (const PizzaPiece& piece : p.pieces)
        out.push_back({piece.beta, piece.Q.lo, piece.Q.hi, piece.width, piece.sign});
    return out;
}

}  // namespace

CompareResult compare_pizzas(const Pizza& a, const Pizza& b, bool ignore_signs) {
    CompareResult res;
    std::vector<PieceKey> ka = keys_of(a), kb = keys_of(b);
    if (ka.size() != kb.size()) return res;
    size_t n = ka.size();
    if (n == 0) {
        res.equivalent = true;
        return res;
    }
    for (int refl = 0; refl < 2; ++refl) {
        std::vector<PieceKey> kr = kb;
        if (refl) std::reverse(kr.begin(), kr.end());
        for (size_t rot = 0; rot < n; ++rot) {
            for (int flip = 0; flip < (ignore_signs ? 1 : 2); ++flip) {
                bool ok = true;
                for (size_t i = 0; i < n && ok; ++i)
                    ok = key_eq(ka[i], kr[(i + rot) % n], ignore_signs, flip != 0);
                if (ok) {
                    res.equivalent = true;
                    res.rotation = rot;
                    res.reflected = refl != 0;
                    res.sign_flipped = flip != 0;
                    return res;
                }
            }
        }
    }
    return res;
}

}  // namespace pizza
