#include "pizza/zones.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace pizza {

// ---------------------------------------------------------------------------
// composition along arcs
// ---------------------------------------------------------------------------

PuiseuxPoly germ_on_arc(const FuncExpr& f, const Arc& a) {
    if (f.is_leaf()) return compose_arc(to_chart(f.leaf(), a.chart, a.half), a.g);
    PuiseuxPoly A = germ_on_arc(f.left(), a);
    PuiseuxPoly B = germ_on_arc(f.right(), a);
    PuiseuxPoly d = A - B;
    if (d.is_zero()) return A;
    bool left_smaller = d.lead_coeff().sign() < 0;
    if (f.kind() == FuncExpr::Kind::min_node) return left_smaller ? A : B;
    return left_smaller ? B : A;
}

QInf ord_on_arc(const FuncExpr& f, const Arc& a) {
    PuiseuxPoly g = germ_on_arc(f, a);
    if (g.is_zero()) return QInf::infinity();
    return QInf(*g.ord());
}

// ---------------------------------------------------------------------------
// the walk: zone data of an arc with respect to a single polynomial leaf
// ---------------------------------------------------------------------------

namespace {

struct Walk {
    enum class Kind { cone, zero_branch, stab, early } kind;
    QInf mu;
    QInf q;
    PuiseuxPoly prefix;   // terminal prefix (walk anchor); for cone: unit term
    BivarPoly P;          // chart-half transform of the leaf
    NewtonPolygon np;     // polygon at the terminal prefix (not set for cone)
    bool a_is_prefix = false;
    Rational delta;       // deviation exponent of a beyond the prefix (when any)
    FieldElement dev_coeff;
};

UniPoly cone_poly(const BivarPoly& P) {
    BivarPoly L = P.lowest_form();
    int m = L.multiplicity();
    std::vector<FieldElement> coeffs(m + 1);
    for (const auto& [e, c] : L.terms()) coeffs[e.second] = c;
    return UniPoly(std::move(coeffs));
}


long real_nonzero_root_count(const UniPoly& p) {
    if (p.degree() < 1) return 0;
    long n = 0;
    for (const auto& r : isolate_real_roots(p).roots) {
        if (r.exact && r.exact->is_zero()) continue;
        ++n;
    }
    return n;
}

Walk walk_leaf(const BivarPoly& leaf, const Arc& a) {
    Walk w;
    w.P = to_chart(leaf, a.chart, a.half);
    PuiseuxPoly fa = compose_arc(w.P, a.g);
    w.q = fa.is_zero() ? QInf::infinity() : QInf(*fa.ord());

    FieldElement c1 = a.unit_coeff();
    if (!w.P.lowest_form().eval(FieldElement(1), c1).is_zero()) {
        w.kind = Walk::Kind::cone;
        w.mu = QInf(Rational(1));
        if (!c1.is_zero()) w.prefix = PuiseuxPoly::monomial(Rational(1), c1);
        return w;
    }

    PuiseuxPoly m;
    if (!c1.is_zero()) m = PuiseuxPoly::monomial(Rational(1), c1);
    size_t next = m.size();  // index into a.g's terms
    while (true) {
        PuiseuxInZ F = substitute(w.P, m);
        w.np = newton_polygon(F);
        Rational dom = m.is_zero() ? Rational(1) : m.last_exponent();
        QInf T0 = QInf::infinity();
        if (w.np.nu0 && w.np.T0()) T0 = QInf(*w.np.T0());

        const auto& terms = a.g.terms();
        bool has_next = next < terms.size();
        if (!has_next) {
            w.prefix = m;
            w.a_is_prefix = true;
            if (!w.np.nu0) {
                w.kind = Walk::Kind::zero_branch;
                w.mu = QInf::infinity();
            } else {
                w.kind = Walk::Kind::stab;
                w.mu = T0;  // finite: f depends on the graph coordinate here
            }
            return w;
        }
        Rational delta = terms[next].first;
        FieldElement b = terms[next].second;
        if (T0 < QInf(delta)) {
            w.prefix = m;
            w.kind = Walk::Kind::stab;
            w.mu = T0;
            w.delta = delta;
            w.dev_coeff = b;
            return w;
        }
        const NPEdge* at_delta = nullptr;
        for (const NPEdge& e : w.np.edges)
            if (e.T == delta && e.T > dom) at_delta = &e;
        if (at_delta && at_delta->poly.eval(b).is_zero()) {
            m = m + PuiseuxPoly::monomial(delta, b);
            ++next;
            continue;
        }
        w.prefix = m;
        w.delta = delta;
        w.dev_coeff = b;
        if (QInf(delta) == T0) {
            w.kind = Walk::Kind::stab;
            w.mu = T0;
        } else {
            w.kind = Walk::Kind::early;
            w.mu = QInf(delta);
        }
        return w;
    }
}

// real tangent directions of the lowest form, across both charts
bool tangent_cone_has_real_lines(const BivarPoly& f) {
    for (Chart ch : {Chart::x_graph, Chart::y_graph}) {
        BivarPoly P = to_chart(f, ch, 1);
        UniPoly cp = cone_poly(P);
        if (cp.degree() >= 1 && !isolate_real_roots(cp).roots.empty()) return true;
    }
    return false;
}

}  // namespace

Rational generic_coefficient(const std::vector<FieldElement>& avoid) {
    Rational bound(2);
    bool any = false;
    for (const FieldElement& r : avoid) {
        if (r.is_zero()) continue;
        RatInterval I = r.ival();
        long guard = 0;
        while (I.contains_zero()) {
            if (++guard > max_refine_bits) throw RefinementLimit("generic_coefficient cap");
            if (r.tower()) r.tower()->refine(2);
            I = r.ival();
        }
        Rational low = I.certified_sign() > 0 ? I.lo : abs(I.hi);
        if (!any || low < bound) bound = low;
        any = true;
    }
    if (!any) return Rational(1);
    return simplest_in(Rational(0), bound);
}

// ---------------------------------------------------------------------------
// min/max: one-sided zone sweep by exact probes
// ---------------------------------------------------------------------------

namespace {

Arc with_expansion(const Arc& a, PuiseuxPoly g) { return Arc{a.chart, a.half, std::move(g)}; }

// ord of f on prefix + sigma*s*u^t for small generic s > 0; evaluates at
// shrinking concrete rationals until two consecutive probes agree
QInf probe_ord(const FuncExpr& f, const Arc& a, const PuiseuxPoly& prefix, int sigma,
               const Rational& t, Rational s0 = Rational(1, 2)) {
    QInf prev;
    bool have = false;
    Rational s = s0;
    for (int i = 0; i < 8; ++i) {
        Arc probe = with_expansion(
            a, prefix + PuiseuxPoly::monomial(t, FieldElement(sigma > 0 ? s : -s)));
        QInf o = ord_on_arc(f, probe);
        if (have && o == prev) return o;
        prev = o;
        have = true;
        s = s / Rational(8);
    }
    return prev;
}

struct SweepResult {
    QInf mu;
    bool blocked = false;
};

// candidate breakpoints of the deformation order map on (lo, hi)
std::vector<Rational> sweep_candidates(const std::vector<BivarPoly>& polys,
                                       const PuiseuxPoly& prefix, const Rational& lo,
                                       const QInf& hi) {
    std::set<std::string> seen;
    std::vector<Rational> out;
    std::vector<std::vector<std::pair<Rational, int>>> vertices;
    auto add = [&](const Rational& T) {
        if (!(T > lo)) return;
        if (!hi.is_inf() && !(T < hi.finite())) return;
        if (seen.insert(T.str()).second) out.push_back(T);
    };
    for (const BivarPoly& p : polys) {
        PuiseuxInZ F = substitute(p, prefix);
        bool all_zero = true;
        for (const auto& c : F.cj) all_zero &= c.is_zero();
        if (all_zero) continue;
        NewtonPolygon np = newton_polygon(F);
        for (const NPEdge& e : np.edges) add(e.T);
        std::vector<std::pair<Rational, int>> vs;
        for (const auto& [nu, j] : np.support) vs.push_back({nu, j});
        vertices.push_back(std::move(vs));
    }
    // crossings of support lines nu + j*T across polynomials
    for (size_t i = 0; i < vertices.size(); ++i)
        for (size_t k = i + 1; k < vertices.size(); ++k)
            for (const auto& [nu1, j1] : vertices[i])
                for (const auto& [nu2, j2] : vertices[k]) {
                    if (j1 == j2) continue;
                    add((nu1 - nu2) / Rational(j2 - j1));
                }
    std::sort(out.begin(), out.end());
    return out;
}

// all real roots (jump candidates) of the polys' edge polynomials at contact T
std::vector<FieldElement> layer_roots(const std::vector<BivarPoly>& polys,
                                      const PuiseuxPoly& prefix, const Rational& T) {
    std::vector<FieldElement> out;
    for (const BivarPoly& p : polys) {
        PuiseuxInZ F = substitute(p, prefix);
        bool all_zero = true;
        for (const auto& c : F.cj) all_zero &= c.is_zero();
        if (all_zero) continue;
        NewtonPolygon np = newton_polygon(F);
        for (const NPEdge& e : np.edges) {
            if (e.T != T) continue;
            RootIsolation iso = isolate_real_roots(e.poly);
            for (auto& r : iso.roots) {
                FieldElement c;
                if (r.exact) {
                    c = *r.exact;
                } else {
                    TowerPtr t;
                    for (const FieldElement& cc : r.sqfree_factor.coeffs())
                        t = Tower::join(t, cc.tower());
                    auto [tw, root] = extend_tower(t, r.sqfree_factor, r.iso);
                    c = root;
                }
                if (!c.is_zero()) out.push_back(std::move(c));
            }
        }
    }
    return out;
}

// verify that every deformation of `prefix` at contacts > from_T keeps order q
bool subtree_order_constant(const FuncExpr& f, const Arc& a,
                            const std::vector<BivarPoly>& polys, const PuiseuxPoly& prefix,
                            const Rational& from_T, const QInf& q, int depth) {
    if (depth > 12) throw std::logic_error("zone sweep: subtree verification too deep");
    Arc center = with_expansion(a, prefix);
    if (ord_on_arc(f, center) != q) return false;
    std::vector<Rational> cands = sweep_candidates(polys, prefix, from_T, QInf::infinity());
    Rational lo = from_T;
    for (size_t i = 0; i <= cands.size(); ++i) {
        Rational hi_probe =
            (i < cands.size()) ? simplest_in(lo, cands[i]) : lo + Rational(1);
        for (int sigma : {1, -1})
            if (probe_ord(f, a, prefix, sigma, hi_probe) != q) return false;
        if (i < cands.size()) {
            for (int sigma : {1, -1})
                if (probe_ord(f, a, prefix, sigma, cands[i]) != q) return false;
            for (const FieldElement& r : layer_roots(polys, prefix, cands[i])) {
                PuiseuxPoly child = prefix + PuiseuxPoly::monomial(cands[i], r);
                if (!subtree_order_constant(f, a, polys, child, cands[i], q, depth + 1))
                    return false;
            }
            lo = cands[i];
        }
    }
    return true;
}

// a rational strictly between two exact values x < y
Rational rational_between(const FieldElement& x, const FieldElement& y) {
    long guard = 0;
    while (true) {
        RatInterval Ix = x.ival(), Iy = y.ival();
        if (Ix.hi < Iy.lo) return simplest_in(Ix.hi, Iy.lo);
        if (Ix.is_point() && Iy.is_point() && Ix.lo < Iy.lo) return simplest_in(Ix.lo, Iy.lo);
        if (++guard > max_refine_bits) throw RefinementLimit("rational_between cap");
        if (x.tower()) x.tower()->refine(2);
        if (y.tower()) y.tower()->refine(2);
    }
}

// Cross one coefficient layer of the sweep: arcs m + c*u^T with c running
// from c0 towards sigma*infinity (possibly through 0 and the core of m).
// Every non-exceptional gap must keep order q; exceptional roots in the path
// must head subtrees of constant order q.
struct LayerCross {
    bool ok = true;
    bool blocked = false;
};
LayerCross cross_layer(const FuncExpr& f, const Arc& a, const std::vector<BivarPoly>& polys,
                       const PuiseuxPoly& m, const Rational& T, const FieldElement& c0,
                       int sigma, const QInf& q) {
    // in-path roots ordered by distance from c0 along the ray
    std::vector<FieldElement> roots;
    for (const FieldElement& r : layer_roots(polys, m, T)) {
        int rel = cross_cmp(r, c0);
        if ((sigma > 0) ? (rel > 0) : (rel < 0)) roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end(), [&](const FieldElement& x, const FieldElement& y) {
        return sigma > 0 ? cross_cmp(x, y) < 0 : cross_cmp(x, y) > 0;
    });
    // probe one coefficient per gap
    FieldElement lower = c0;
    auto probe_at = [&](const Rational& c) {
        Arc probe = with_expansion(a, m + PuiseuxPoly::monomial(T, FieldElement(c)));
        return ord_on_arc(f, probe) == q;
    };
    for (const FieldElement& r : roots) {
        Rational c = (sigma > 0) ? rational_between(lower, r) : rational_between(r, lower);
        if (!c.is_zero()) {  // c == 0 would leave the layer; the core check covers it
            if (!probe_at(c)) return {false, false};
        }
        PuiseuxPoly child = m + PuiseuxPoly::monomial(T, r);
        if (!subtree_order_constant(f, a, polys, child, T, q, 0)) return {false, true};
        lower = r;
    }
    // the unbounded gap beyond the last root
    Rational edge = lower.ival_refined(Rational(1)).abs_upper() + Rational(1);
    if (!probe_at(sigma > 0 ? edge : -edge)) return {false, false};
    // crossing 0: the deep wedge of m itself must carry order q
    int rel0 = cross_cmp(FieldElement(0), c0);
    bool crosses_zero = (sigma > 0) ? (rel0 > 0) : (rel0 < 0);
    if (crosses_zero) {
        if (!subtree_order_constant(f, a, polys, m, T, q, 0)) return {false, true};
    }
    return {true, false};
}

SweepResult sweep_side(const FuncExpr& f, const Arc& a, int sigma) {
    QInf q = ord_on_arc(f, a);
    assert(!q.is_inf());
    std::vector<BivarPoly> polys;
    std::vector<const BivarPoly*> ls = f.leaves();
    for (const BivarPoly* p : ls) polys.push_back(to_chart(*p, a.chart, a.half));
    for (size_t i = 0; i < ls.size(); ++i)
        for (size_t j = i + 1; j < ls.size(); ++j) {
            BivarPoly d = *ls[i] - *ls[j];
            if (!d.is_zero()) polys.push_back(to_chart(d, a.chart, a.half));
        }

    const auto& terms = a.g.terms();
    int r = int(terms.size());
    // sweep contacts downward: the interval of prefix(k) covers
    // (terms[k-1], terms[k]) and the layer at terms[k-1] crosses to prefix(k-1)
    for (int k = r; k >= 0; --k) {
        PuiseuxPoly m = a.g.prefix(size_t(k));
        Rational lo = (k > 0) ? terms[size_t(k) - 1].first : Rational(1);
        QInf hi = (k < r) ? QInf(terms[size_t(k)].first) : QInf::infinity();
        if (hi.is_inf() || lo < hi.finite()) {
            std::vector<Rational> cands = sweep_candidates(polys, m, lo, hi);
            // walk subintervals and candidate layers from the deep end down
            for (int i = int(cands.size()); i >= 0; --i) {
                Rational sub_lo = (i == 0) ? lo : cands[size_t(i) - 1];
                QInf sub_hi = (i == int(cands.size())) ? hi : QInf(cands[size_t(i)]);
                Rational t = sub_hi.is_inf() ? sub_lo + Rational(1)
                                             : simplest_in(sub_lo, sub_hi.finite());
                if (probe_ord(f, a, m, sigma, t) != q) return {sub_hi, false};
                if (i > 0) {
                    Rational c = cands[size_t(i) - 1];
                    LayerCross lc = cross_layer(f, a, polys, m, c, FieldElement(0), sigma, q);
                    if (!lc.ok) return {QInf(c), lc.blocked};
                }
            }
        }
        if (k == 0) break;
        // the layer at the arc's own k-th term
        Rational T = terms[size_t(k) - 1].first;
        FieldElement b = terms[size_t(k) - 1].second;
        PuiseuxPoly shorter = a.g.prefix(size_t(k) - 1);
        LayerCross lc = cross_layer(f, a, polys, shorter, T, b, sigma, q);
        if (!lc.ok) return {QInf(T), lc.blocked};
    }
    return {QInf(Rational(1)), false};
}

}  // namespace

// ---------------------------------------------------------------------------
// zone sizes
// ---------------------------------------------------------------------------

QInf zone_size(const FuncExpr& f, const Arc& a) {
    if (f.is_leaf()) return walk_leaf(f.leaf(), a).mu;
    QInf q = ord_on_arc(f, a);
    if (q.is_inf()) return QInf::infinity();
    SweepResult p = sweep_side(f, a, 1), m = sweep_side(f, a, -1);
    return p.mu < m.mu ? p.mu : m.mu;
}

SideSizes zone_size_sides(const FuncExpr& f, const Arc& a) {
    if (f.is_leaf()) {
        QInf mu = walk_leaf(f.leaf(), a).mu;
        return {mu, mu, false, false};
    }
    QInf q = ord_on_arc(f, a);
    if (q.is_inf()) return {QInf::infinity(), QInf::infinity(), false, false};
    SweepResult p = sweep_side(f, a, 1), m = sweep_side(f, a, -1);
    return {p.mu, m.mu, p.blocked, m.blocked};
}

// ---------------------------------------------------------------------------
// deformation profile
// ---------------------------------------------------------------------------

namespace {

ProfileSide profile_from_polygon(const NewtonPolygon& np, const Rational& dom_lo,
                                 const QInf& value) {
    ProfileSide side;
    side.value = value;
    side.stab_T = QInf::infinity();
    // hull vertices from the edge list: edges descending T = ascending j
    struct Vx {
        Rational nu;
        int j;
    };
    std::vector<Vx> vx;
    if (np.edges.empty()) {
        // single support point: one affine law on the whole domain
        const auto& [nu, j] = np.support.front();
        vx.push_back({nu, j});
    } else {
        vx.push_back({np.edges.front().value_lo, np.edges.front().j_lo});
        for (const NPEdge& e : np.edges)
            vx.push_back({e.value_lo - e.T * Rational(e.j_hi - e.j_lo), e.j_hi});
    }
    // segment for vertex k: T in (T_{edge k}, T_{edge k-1}); edges sorted asc j
    Rational prev_hi;  // unused marker
    QInf hi = QInf::infinity();
    for (size_t k = 0; k < vx.size(); ++k) {
        Rational seg_lo = (k < np.edges.size()) ? np.edges[k].T : dom_lo;
        if (seg_lo < dom_lo) seg_lo = dom_lo;
        if (!(QInf(seg_lo) < hi)) break;  // everything deeper is outside the domain
        ProfileSegment s;
        s.lo = seg_lo;
        s.hi = hi;
        s.slope = vx[k].j;
        s.intercept = vx[k].nu;
        side.segments.push_back(s);
        if (vx[k].j == 0) side.stab_T = QInf(seg_lo);
        hi = QInf(seg_lo);
        if (seg_lo == dom_lo) break;
    }
    std::reverse(side.segments.begin(), side.segments.end());
    if (side.stab_T.is_inf() && np.nu0 && np.edges.empty()) side.stab_T = QInf(dom_lo);
    return side;
}

}  // namespace

DeformationProfile deformation_profile(const FuncExpr& f, const Arc& a) {
    DeformationProfile out;
    out.base = a;
    out.domain_lo = a.g.is_zero() ? Rational(1) : a.g.last_exponent();
    QInf q = ord_on_arc(f, a);
    if (f.is_leaf()) {
        BivarPoly P = to_chart(f.leaf(), a.chart, a.half);
        PuiseuxInZ F = substitute(P, a.g);
        NewtonPolygon np = newton_polygon(F);
        ProfileSide side = profile_from_polygon(np, out.domain_lo, q);
        for (const NPEdge& e : np.edges) {
            if (!(e.T > out.domain_lo)) continue;
            RootIsolation iso = isolate_real_roots(e.poly);
            for (auto& r : iso.roots) {
                FieldElement c;
                if (r.exact) {
                    c = *r.exact;
                } else {
                    TowerPtr t;
                    for (const FieldElement& cc : r.sqfree_factor.coeffs())
                        t = Tower::join(t, cc.tower());
                    auto [tw, root] = extend_tower(t, r.sqfree_factor, r.iso);
                    c = root;
                }
                if (!c.is_zero()) side.exceptional.push_back(std::move(c));
            }
        }
        out.plus = side;
        out.minus = std::move(side);
        out.symmetric = true;
        return out;
    }
    // min/max: reconstruct each side piecewise from exact probes
    std::vector<BivarPoly> polys;
    std::vector<const BivarPoly*> ls = f.leaves();
    for (const BivarPoly* p : ls) polys.push_back(to_chart(*p, a.chart, a.half));
    for (size_t i = 0; i < ls.size(); ++i)
        for (size_t j = i + 1; j < ls.size(); ++j) {
            BivarPoly d = *ls[i] - *ls[j];
            if (!d.is_zero()) polys.push_back(to_chart(d, a.chart, a.half));
        }
    std::vector<Rational> cands = sweep_candidates(polys, a.g, out.domain_lo, QInf::infinity());
    for (int sigma : {1, -1}) {
        ProfileSide side;
        side.value = q;
        side.stab_T = QInf::infinity();
        Rational lo = out.domain_lo;
        for (size_t i = 0; i <= cands.size(); ++i) {
            QInf hi = (i < cands.size()) ? QInf(cands[i]) : QInf::infinity();
            // two probes pin the affine law on (lo, hi)
            Rational t1 = hi.is_inf() ? lo + Rational(1) : simplest_in(lo, hi.finite());
            Rational t2 = hi.is_inf() ? lo + Rational(2)
                                      : simplest_in(t1, hi.finite());
            QInf o1 = probe_ord(f, a, a.g, sigma, t1);
            QInf o2 = probe_ord(f, a, a.g, sigma, t2);
            ProfileSegment s;
            s.lo = lo;
            s.hi = hi;
            if (o1.is_inf() || o2.is_inf())
                throw std::logic_error("deformation_profile: infinite probe order");
            Rational slope_r = (o2.finite() - o1.finite()) / (t2 - t1);
            if (!slope_r.is_integer())
                throw std::logic_error("deformation_profile: non-integer slope");
            s.slope = slope_r.num().to_long();
            s.intercept = o1.finite() - slope_r * t1;
            if (!side.segments.empty()) {
                ProfileSegment& prev = side.segments.back();
                if (prev.slope == s.slope && prev.intercept == s.intercept) {
                    prev.hi = s.hi;
                    if (i < cands.size()) lo = cands[i];
                    continue;
                }
            }
            side.segments.push_back(s);
            if (i < cands.size()) lo = cands[i];
        }
        // stabilization: first segment whose law equals the constant q
        for (const ProfileSegment& s : side.segments)
            if (s.slope == 0 && !q.is_inf() && s.intercept == q.finite()) {
                side.stab_T = QInf(s.lo);
                break;
            }
        if (sigma > 0)
            out.plus = std::move(side);
        else
            out.minus = std::move(side);
    }
    out.symmetric = false;
    return out;
}

// ---------------------------------------------------------------------------
// genericity witnesses
// ---------------------------------------------------------------------------

Witnesses genericity_witnesses(const FuncExpr& f, const Arc& a) {
    Witnesses out;
    out.ord_base = ord_on_arc(f, a);
    if (out.ord_base.is_inf())
        throw std::invalid_argument("genericity_witnesses: arc lies in the zero set");

    if (f.is_leaf()) {
        Walk w = walk_leaf(f.leaf(), a);
        out.mu = w.mu;
        Rational mu = w.mu.finite();
        std::vector<FieldElement> avoid;
        PuiseuxPoly base;
        FieldElement center(0);
        if (w.kind == Walk::Kind::cone) {
            UniPoly cp = cone_poly(w.P);
            center = a.unit_coeff();
            for (const FieldElement& r : [&] {
                     std::vector<FieldElement> roots;
                     if (cp.degree() >= 1) {
                         RootIsolation iso = isolate_real_roots(cp);
                         for (auto& rr : iso.roots) {
                             if (rr.exact)
                                 roots.push_back(*rr.exact);
                             else {
                                 TowerPtr t;
                                 for (const FieldElement& cc : rr.sqfree_factor.coeffs())
                                     t = Tower::join(t, cc.tower());
                                 auto [tw, root] = extend_tower(t, rr.sqfree_factor, rr.iso);
                                 roots.push_back(root);
                             }
                         }
                     }
                     return roots;
                 }()) {
                avoid.push_back(r - center);
            }
            base = PuiseuxPoly();  // deformations change the unit coefficient
        } else {
            base = w.prefix;
            const NPEdge* at = nullptr;
            for (const NPEdge& e : w.np.edges)
                if (e.T == mu) at = &e;
            if (at) {
                RootIsolation iso = isolate_real_roots(at->poly);
                for (auto& rr : iso.roots) {
                    FieldElement root;
                    if (rr.exact)
                        root = *rr.exact;
                    else {
                        TowerPtr t;
                        for (const FieldElement& cc : rr.sqfree_factor.coeffs())
                            t = Tower::join(t, cc.tower());
                        auto [tw, r2] = extend_tower(t, rr.sqfree_factor, rr.iso);
                        root = r2;
                    }
                    avoid.push_back(root);
                }
            }
            if (!w.a_is_prefix && w.delta == mu) {
                center = w.dev_coeff;
                for (FieldElement& r : avoid) r = r - center;
                avoid.push_back(-center);  // keep the coefficient nonzero
            }
        }
        Rational s = generic_coefficient(avoid);
        PuiseuxPoly gp, gm;
        if (w.kind == Walk::Kind::cone) {
            gp = PuiseuxPoly::monomial(Rational(1), center + FieldElement(s));
            gm = PuiseuxPoly::monomial(Rational(1), center - FieldElement(s));
        } else {
            gp = base + PuiseuxPoly::monomial(mu, center + FieldElement(s));
            gm = base + PuiseuxPoly::monomial(mu, center - FieldElement(s));
        }
        out.plus = Arc{a.chart, a.half, gp};
        out.minus = Arc{a.chart, a.half, gm};
    } else {
        SideSizes sides = zone_size_sides(f, a);
        out.mu = sides.plus < sides.minus ? sides.plus : sides.minus;
        if (sides.plus != sides.minus) {
            out.note = "sides disagree: plus " + sides.plus.str() + ", minus " +
                       sides.minus.str();
        }
        if (out.mu.is_inf()) {
            out.note = "zone size infinite";
            return out;
        }
        Rational mu = out.mu.finite();
        Rational s = Rational(1, 3);
        out.plus = with_expansion(a, a.g.truncated_above(mu) +
                                         PuiseuxPoly::monomial(mu, FieldElement(s)));
        out.minus = with_expansion(a, a.g.truncated_above(mu) +
                                          PuiseuxPoly::monomial(mu, FieldElement(-s)));
        // the truncation keeps exponents < mu; coefficients at mu merge if present
    }

    out.ord_plus = ord_on_arc(f, out.plus);
    out.ord_minus = ord_on_arc(f, out.minus);
    bool t_ok = tord(a, out.plus) == out.mu && tord(a, out.minus) == out.mu &&
                tord(out.plus, out.minus) == out.mu;
    out.generic = t_ok && out.ord_plus == out.ord_base && out.ord_minus == out.ord_base &&
                  out.note.empty();
    if (!out.generic && out.note.empty()) out.note = "witness verification failed";
    return out;
}

// ---------------------------------------------------------------------------
// maximal order
// ---------------------------------------------------------------------------

bool is_maximal_order(const FuncExpr& f, const Arc& a) {
    if (f.is_leaf()) {
        Walk w = walk_leaf(f.leaf(), a);
        switch (w.kind) {
            case Walk::Kind::zero_branch:
                return true;
            case Walk::Kind::early:
                return false;
            case Walk::Kind::cone:
                return !tangent_cone_has_real_lines(f.leaf());
            case Walk::Kind::stab: {
                const NPEdge* stab = w.np.stab_edge();
                if (!stab) return true;
                return real_nonzero_root_count(stab->poly) == 0;
            }
        }
        return false;
    }
    QInf q = ord_on_arc(f, a);
    if (q.is_inf()) return true;  // special zone
    SideSizes sides = zone_size_sides(f, a);
    if (sides.plus != sides.minus || sides.plus_blocked || sides.minus_blocked) return false;
    if (sides.plus == QInf(Rational(1))) {
        // order must be globally constant on the link
        std::vector<const BivarPoly*> ls = f.leaves();
        std::vector<BivarPoly> polys;
        for (const BivarPoly* p : ls) polys.push_back(*p);
        for (size_t i = 0; i < ls.size(); ++i)
            for (size_t j = i + 1; j < ls.size(); ++j) {
                BivarPoly d = *ls[i] - *ls[j];
                if (!d.is_zero()) polys.push_back(d);
            }
        for (const BivarPoly& p : polys) {
            for (Chart ch : {Chart::x_graph, Chart::y_graph}) {
                for (int h : {1, -1}) {
                    BivarPoly P = to_chart(p, ch, h);
                    for (const FieldElement& c : cone_root_directions(P, ch)) {
                        Arc d{ch, h,
                              c.is_zero() ? PuiseuxPoly()
                                          : PuiseuxPoly::monomial(Rational(1), c)};
                        if (ord_on_arc(f, d) != q) return false;
                        SideSizes ds = zone_size_sides(f, d);
                        if (ds.plus != QInf(Rational(1)) || ds.minus != QInf(Rational(1)) ||
                            ds.plus_blocked || ds.minus_blocked)
                            return false;
                    }
                }
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// maximal-order zones
// ---------------------------------------------------------------------------

namespace {

void collect_zone_nodes(const FuncExpr& f, const PackageNode* node, Chart chart, int half,
                        std::vector<ZoneDescriptor>& out) {
    if (node->nu0) {
        for (const TreeEvent& ev : node->events) {
            if (ev.is_stab && ev.roots.empty()) {
                ZoneDescriptor z;
                z.representative = Arc{chart, half, node->prefix};
                z.order = QInf(*node->nu0);
                z.size = QInf(ev.T);
                z.maximal_order = true;
                out.push_back(std::move(z));
            }
        }
    }
    for (const auto& evchildren : node->children)
        for (const auto& ch : evchildren) collect_zone_nodes(f, ch.get(), chart, half, out);
}

}  // namespace

std::vector<ZoneDescriptor> maximal_order_zones(const FuncExpr& f) {
    std::vector<ZoneDescriptor> out;
    std::vector<const BivarPoly*> ls = f.leaves();

    // special zones: real zero branches of f
    std::vector<Arc> branch_arcs;
    for (const BivarPoly* leaf : ls) {
        BranchSet bs = expand_branches(*leaf);
        for (const BranchTruncation& b : bs.branches) {
            if (!ord_on_arc(f, b.arc).is_inf()) continue;
            bool dup = false;
            for (const Arc& seen : branch_arcs)
                if (seen.chart == b.arc.chart && seen.half == b.arc.half &&
                    tord(seen, b.arc).is_inf())
                    dup = true;
            if (dup) continue;
            branch_arcs.push_back(b.arc);
            ZoneDescriptor z;
            z.representative = b.arc;
            z.order = QInf::infinity();
            z.size = QInf::infinity();
            z.maximal_order = true;
            out.push_back(std::move(z));
        }
    }

    bool any_package = false;
    if (f.is_leaf()) {
        for (Chart ch : {Chart::x_graph, Chart::y_graph}) {
            for (int h : {1, -1}) {
                BivarPoly P = to_chart(f.leaf(), ch, h);
                for (const FieldElement& c : cone_root_directions(P, ch)) {
                    any_package = true;
                    auto tree = build_package_tree(P, c);
                    collect_zone_nodes(f, tree.get(), ch, h, out);
                }
            }
        }
    } else {
        // candidates from every leaf's trees, verified against f
        std::vector<Arc> cands;
        for (const BivarPoly* leaf : ls) {
            for (Chart ch : {Chart::x_graph, Chart::y_graph}) {
                for (int h : {1, -1}) {
                    BivarPoly P = to_chart(*leaf, ch, h);
                    for (const FieldElement& c : cone_root_directions(P, ch)) {
                        any_package = true;
                        auto tree = build_package_tree(P, c);
                        std::vector<ZoneDescriptor> tmp;
                        collect_zone_nodes(f, tree.get(), ch, h, tmp);
                        for (auto& z : tmp) cands.push_back(z.representative);
                    }
                }
            }
        }
        for (const Arc& r : cands) {
            QInf q = ord_on_arc(f, r);
            if (q.is_inf()) continue;
            if (!is_maximal_order(f, r)) continue;
            QInf mu = zone_size(f, r);
            bool dup = false;
            for (const ZoneDescriptor& z : out)
                if (!z.order.is_inf() && z.order == q && tord(z.representative, r) >= z.size)
                    dup = true;
            if (dup) continue;
            ZoneDescriptor z;
            z.representative = r;
            z.order = q;
            z.size = mu;
            out.push_back(std::move(z));
        }
    }

    if (out.empty() && !any_package) {
        // no critical structure at all: the whole link is one zone
        Arc rep{Chart::x_graph, 1, PuiseuxPoly()};
        ZoneDescriptor z;
        z.representative = rep;
        z.order = ord_on_arc(f, rep);
        z.size = QInf(Rational(1));
        out.push_back(std::move(z));
    }
    std::sort(out.begin(), out.end(), [](const ZoneDescriptor& x, const ZoneDescriptor& y) {
        return ccw_less(x.representative, y.representative);
    });
    return out;
}

}  // namespace pizza
