#include "pizza/branches.hpp"

#include <algorithm>
#include <cassert>

namespace pizza {

BivarPoly to_chart(const BivarPoly& f, Chart chart, int half) {
    BivarPoly r = (chart == Chart::x_graph) ? f : f.swapped();
    if (half < 0) r = r.with_x_negated();
    return r;
}

PuiseuxPoly compose_arc(const BivarPoly& chart_poly, const PuiseuxPoly& g) {
    int dy = chart_poly.deg_y();
    std::vector<PuiseuxPoly> gpow(dy + 1);
    gpow[0] = PuiseuxPoly::monomial(Rational(0), FieldElement(1));
    for (int k = 1; k <= dy; ++k) gpow[k] = gpow[k - 1] * g;
    PuiseuxPoly out;
    for (const auto& [e, c] : chart_poly.terms())
        out = out + gpow[e.second].scaled(c).shifted(Rational(e.first));
    return out;
}

namespace {

TowerPtr deepest_tower(const UniPoly& p) {
    TowerPtr t;
    for (const FieldElement& c : p.coeffs()) t = Tower::join(t, c.tower());
    return t;
}

std::vector<FieldElement> real_nonzero_roots(const UniPoly& p) {
    std::vector<FieldElement> out;
    if (p.degree() < 1) return out;
    RootIsolation iso = isolate_real_roots(p);
    for (auto& r : iso.roots) {
        FieldElement c;
        if (r.exact) {
            c = *r.exact;
        } else {
            auto [t, root] = extend_tower(deepest_tower(r.sqfree_factor), r.sqfree_factor, r.iso);
            c = root;
        }
        if (!c.is_zero()) out.push_back(std::move(c));
    }
    return out;
}

struct RootRec {
    FieldElement value;
    int multiplicity;
};

std::vector<RootRec> real_nonzero_roots_with_mult(const UniPoly& p) {
    std::vector<RootRec> out;
    if (p.degree() < 1) return out;
    RootIsolation iso = isolate_real_roots(p);
    for (auto& r : iso.roots) {
        FieldElement c;
        if (r.exact) {
            c = *r.exact;
        } else {
            auto [t, root] = extend_tower(deepest_tower(r.sqfree_factor), r.sqfree_factor, r.iso);
            c = root;
        }
        if (!c.is_zero()) out.push_back({std::move(c), r.multiplicity});
    }
    return out;
}

// lowest z-degree with a nonzero coefficient
int z_mult(const PuiseuxInZ& F) {
    for (size_t j = 0; j < F.cj.size(); ++j)
        if (!F.cj[j].is_zero()) return int(j);
    throw std::logic_error("z_mult: zero substitution");
}

bool owned_by_chart(Chart chart, const PuiseuxPoly& g) {
    if (g.is_zero()) return true;  // axis branch, owned where produced
    Rational e1 = *g.ord();
    if (e1 > Rational(1)) return true;
    if (e1 < Rational(1)) return false;
    const FieldElement& c = g.lead_coeff();
    int above = (c - FieldElement(1)).sign();   // |c| vs 1
    int below = (c + FieldElement(1)).sign();
    bool abs_le_1 = above <= 0 && below >= 0;
    bool abs_lt_1 = above < 0 && below > 0;
    return (chart == Chart::x_graph) ? abs_le_1 : abs_lt_1;
}

struct ExpandCtx {
    const BivarPoly* part;
    Chart chart;
    int half;
    int part_mult;
    BranchSet* out;
    ChartHalfCount* cnt;
};

// resolved truncation of the unique solution continuing regularly through g
void regular_chain(const ExpandCtx& ctx, PuiseuxPoly g) {
    for (int step = 0; step < 256; ++step) {
        PuiseuxInZ F = substitute(*ctx.part, g);
        if (F.z0_exactly_zero) {
            if (z_mult(F) != 1) throw std::logic_error("regular_chain: non-simple exact branch");
            BranchTruncation b;
            b.arc = Arc{ctx.chart, ctx.half, g};
            b.multiplicity = ctx.part_mult;
            b.exact = true;
            b.chart_poly = *ctx.part;
            if (owned_by_chart(ctx.chart, g)) {
                ctx.cnt->real_mult += ctx.part_mult;
                ctx.out->branches.push_back(std::move(b));
            } else {
                ctx.cnt->deferred += ctx.part_mult;
            }
            return;
        }
        NewtonPolygon np = newton_polygon(F);
        const NPEdge* stab = np.stab_edge();
        if (!stab || stab->j_hi != 1)
            throw std::logic_error("regular_chain: expected a linear stabilization edge");
        Rational T0 = stab->T;
        Rational nu0 = *np.nu0;
        if (nu0 < T0 + T0 && !g.is_zero()) {
            // nu1 = nu0 - T0 < T0: the z^1 order is now stable under deepening
            BranchTruncation b;
            b.arc = Arc{ctx.chart, ctx.half, g};
            b.multiplicity = ctx.part_mult;
            b.exact = false;
            b.resolved = true;
            b.chart_poly = *ctx.part;
            if (owned_by_chart(ctx.chart, g)) {
                ctx.cnt->real_mult += ctx.part_mult;
                ctx.out->branches.push_back(std::move(b));
            } else {
                ctx.cnt->deferred += ctx.part_mult;
            }
            return;
        }
        FieldElement c = -(stab->poly[0] / stab->poly[1]);
        g = g + PuiseuxPoly::monomial(T0, c);
    }
    throw std::logic_error("regular_chain: did not certify within 256 steps");
}

// returns the number of solutions (over C, with multiplicity) through g
long expand_node(const ExpandCtx& ctx, const PuiseuxPoly& g) {
    PuiseuxInZ F = substitute(*ctx.part, g);
    long here = 0;
    if (F.z0_exactly_zero) {
        int zm = z_mult(F);
        if (zm != 1) throw std::logic_error("expand_node: repeated branch in square-free part");
        BranchTruncation b;
        b.arc = Arc{ctx.chart, ctx.half, g};
        b.multiplicity = ctx.part_mult;
        b.exact = true;
        b.chart_poly = *ctx.part;
        if (owned_by_chart(ctx.chart, g)) {
            ctx.cnt->real_mult += ctx.part_mult;
            ctx.out->branches.push_back(std::move(b));
        } else {
            ctx.cnt->deferred += ctx.part_mult;
        }
        here += zm;
    }
    NewtonPolygon np = newton_polygon(F);
    Rational dom = g.is_zero() ? Rational(0) : g.last_exponent();
    for (const NPEdge& e : np.edges) {
        if (!(e.T > dom)) continue;
        long span = e.j_hi - e.j_lo;
        here += span;
        long real_solutions = 0;
        for (RootRec& r : real_nonzero_roots_with_mult(e.poly)) {
            real_solutions += r.multiplicity;
            PuiseuxPoly g2 = g + PuiseuxPoly::monomial(e.T, r.value);
            if (r.multiplicity == 1) {
                regular_chain(ctx, std::move(g2));
            } else {
                long sub = expand_node(ctx, g2);
                if (sub != r.multiplicity)
                    throw std::logic_error("expand_node: solution count mismatch");
            }
        }
        ctx.cnt->complex_pairs += ctx.part_mult * (span - real_solutions) / 2;
    }
    return here;
}

}  // namespace

BranchSet expand_branches(const BivarPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("expand_branches: zero polynomial");
    if (!f.at(0, 0).is_zero()) throw std::invalid_argument("expand_branches: f(0,0) != 0");
    BranchSet out;
    out.y_axis_mult = f.x_mult();
    out.x_axis_mult = f.y_mult();
    BivarPoly core = f.div_xpow(out.y_axis_mult).div_ypow(out.x_axis_mult);

    for (int h : {1, -1}) {
        if (out.x_axis_mult > 0) {  // y = 0
            BranchTruncation b;
            b.arc = Arc{Chart::x_graph, h, PuiseuxPoly()};
            b.multiplicity = out.x_axis_mult;
            b.exact = true;
            b.chart_poly = to_chart(f, Chart::x_graph, h);
            out.branches.push_back(std::move(b));
        }
        if (out.y_axis_mult > 0) {  // x = 0
            BranchTruncation b;
            b.arc = Arc{Chart::y_graph, h, PuiseuxPoly()};
            b.multiplicity = out.y_axis_mult;
            b.exact = true;
            b.chart_poly = to_chart(f, Chart::y_graph, h);
            out.branches.push_back(std::move(b));
        }
    }

    for (Chart ch : {Chart::x_graph, Chart::y_graph}) {
        for (int h : {1, -1}) {
            BivarPoly F = to_chart(core, ch, h);
            ChartHalfCount& cnt = out.at(ch, h);
            // solutions tending to 0 over C = ord_w F(0, w)
            int k = 1 << 20;
            for (const auto& [e, c] : F.terms())
                if (e.first == 0) k = std::min(k, e.second);
            cnt.weierstrass = (k == (1 << 20)) ? 0 : k;
            if (cnt.weierstrass == 0) continue;
            for (auto& [part, mult] : y_squarefree_decomposition(F)) {
                if (part.deg_y() == 0) continue;
                ExpandCtx ctx{&part, ch, h, mult, &out, &cnt};
                expand_node(ctx, PuiseuxPoly());
            }
        }
    }
    return out;
}

void deepen(BranchTruncation& b, int steps) {
    if (b.exact) return;
    PuiseuxPoly g = b.arc.g;
    for (int s = 0; s < steps; ++s) {
        PuiseuxInZ F = substitute(b.chart_poly, g);
        if (F.z0_exactly_zero) {
            b.exact = true;
            break;
        }
        NewtonPolygon np = newton_polygon(F);
        const NPEdge* stab = np.stab_edge();
        if (!stab || stab->j_hi != 1) throw std::logic_error("deepen: truncation is not regular");
        FieldElement c = -(stab->poly[0] / stab->poly[1]);
        g = g + PuiseuxPoly::monomial(stab->T, c);
    }
    b.arc.g = std::move(g);
}

QInf contact_order(const BranchTruncation& a, const BranchTruncation& b) {
    BranchTruncation x = a, y = b;
    for (int round = 0; round < 64; ++round) {
        QInf t = tord(x.arc, y.arc);
        if (t.is_inf()) {
            if (x.exact && y.exact) return t;
            // stored terms identical but a continuation may still diverge
            if (!x.exact) deepen(x, 1);
            if (!y.exact) deepen(y, 1);
            QInf t2 = tord(x.arc, y.arc);
            if (t2.is_inf() && x.arc.g == y.arc.g) return QInf::infinity();
            continue;
        }
        // trust the difference only within both known depths
        Rational d = t.finite();
        bool ok_x = x.exact || d <= x.arc.g.last_exponent();
        bool ok_y = y.exact || d <= y.arc.g.last_exponent();
        if (x.arc.chart != y.arc.chart || x.arc.half != y.arc.half) return t;  // direction level
        if (ok_x && ok_y) return t;
        if (!ok_x) deepen(x, 1);
        if (!ok_y) deepen(y, 1);
    }
    throw std::logic_error("contact_order: truncations did not separate");
}

QInf contact_order(BranchTruncation a, const Arc& other) {
    for (int round = 0; round < 64; ++round) {
        QInf t = tord(a.arc, other);
        if (t.is_inf()) {
            if (a.exact) return t;
            deepen(a, 1);
            QInf t2 = tord(a.arc, other);
            if (t2.is_inf()) continue;
            return t2.finite() > other.g.last_exponent() ? QInf::infinity() : t2;
        }
        if (a.exact || t.finite() <= a.arc.g.last_exponent() || a.arc.chart != other.chart ||
            a.arc.half != other.half)
            return t;
        deepen(a, 1);
    }
    // the arc agrees with the branch beyond its own length: germ lies on the branch
    return QInf::infinity();
}

// ---------------------------------------------------------------------------
// package tree
// ---------------------------------------------------------------------------

namespace {

std::unique_ptr<PackageNode> make_node(const BivarPoly& P, PuiseuxPoly prefix, Rational dom_lo,
                                       int depth) {
    if (depth > 64) throw std::logic_error("package tree: depth cap exceeded");
    auto node = std::make_unique<PackageNode>();

    // absorb regular tails: single linear stabilization event, certified nu1
    while (true) {
        PuiseuxInZ F = substitute(P, prefix);
        node->np = newton_polygon(F);
        node->nu0 = node->np.nu0;
        node->events.clear();
        for (auto it = node->np.edges.rbegin(); it != node->np.edges.rend(); ++it) {
            const NPEdge& e = *it;
            if (!(e.T > dom_lo)) continue;
            TreeEvent ev;
            ev.T = e.T;
            ev.epoly = e.poly;
            ev.roots = real_nonzero_roots(e.poly);
            ev.is_stab = (e.j_lo == 0);
            ev.j_lo = e.j_lo;
            ev.j_hi = e.j_hi;
            ev.value_lo = e.value_lo;
            node->events.push_back(std::move(ev));
        }
        if (!node->nu0 || node->events.size() != 1 || !node->events[0].is_stab ||
            node->events[0].j_hi != 1)
            break;
        Rational T0 = node->events[0].T;
        if (*node->nu0 < T0 + T0) {
            // tail certified: nu1 = nu0 - T0 is the branch's exact z^1 order
            node->tail_collapsed = true;
            node->tail_nu1 = *node->nu0 - T0;
            if (node->events[0].roots.size() != 1)
                throw std::logic_error("package tree: linear edge without its root");
            PuiseuxPoly b = prefix + PuiseuxPoly::monomial(T0, node->events[0].roots[0]);
            // resolve the branch truncation a bit deeper for rendering/bounds
            PuiseuxInZ Fb = substitute(P, b);
            node->tail_branch_exact = Fb.z0_exactly_zero;
            node->tail_branch = std::move(b);
            break;
        }
        if (node->events[0].roots.size() != 1)
            throw std::logic_error("package tree: linear edge without its root");
        prefix = prefix + PuiseuxPoly::monomial(T0, node->events[0].roots[0]);
        dom_lo = T0;
    }

    node->prefix = prefix;
    node->dom_lo = dom_lo;
    if (!node->tail_collapsed) {
        node->children.resize(node->events.size());
        for (size_t i = 0; i < node->events.size(); ++i) {
            const TreeEvent& ev = node->events[i];
            for (const FieldElement& c : ev.roots) {
                node->children[i].push_back(
                    make_node(P, prefix + PuiseuxPoly::monomial(ev.T, c), ev.T, depth + 1));
            }
        }
    }
    return node;
}

}  // namespace

std::unique_ptr<PackageNode> build_package_tree(const BivarPoly& P, const FieldElement& c1) {
    PuiseuxPoly prefix;
    if (!c1.is_zero()) prefix = PuiseuxPoly::monomial(Rational(1), c1);
    return make_node(P, std::move(prefix), Rational(1), 0);
}

std::vector<FieldElement> cone_root_directions(const BivarPoly& chart_poly, Chart chart) {
    BivarPoly L = chart_poly.lowest_form();
    int m = L.multiplicity();
    std::vector<FieldElement> coeffs(m + 1);
    for (const auto& [e, c] : L.terms()) coeffs[e.second] = c;
    UniPoly p{std::move(coeffs)};
    std::vector<FieldElement> out;
    if (p.degree() < 1) {
        // L is a pure power of u: the axis direction is the only cone root
        if (p.is_zero()) throw std::logic_error("cone_root_directions: zero form");
        return out;
    }
    RootIsolation iso = isolate_real_roots(p);
    for (auto& r : iso.roots) {
        FieldElement c;
        if (r.exact) {
            c = *r.exact;
        } else {
            auto [t, root] = extend_tower(deepest_tower(r.sqfree_factor), r.sqfree_factor, r.iso);
            c = root;
        }
        int above = (c - FieldElement(1)).sign();
        int below = (c + FieldElement(1)).sign();
        bool keep = (chart == Chart::x_graph) ? (above <= 0 && below >= 0) : (above < 0 && below > 0);
        if (keep) out.push_back(std::move(c));
    }
    // the axis direction c = 0 is a cone root iff L vanishes on it, i.e. the
    // u^m monomial is absent; isolation above reports it already when p(0)=0
    return out;
}

}  // namespace pizza
