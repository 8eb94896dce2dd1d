#include "pizza/verify.hpp"

#include <sstream>

namespace pizza {

namespace {

struct Lcg {
    uint64_t s;
    explicit Lcg(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 17;
    }
    long range(long lo, long hi) { return lo + long(next() % uint64_t(hi - lo + 1)); }
};

std::string qstr(const QInf& q) { return q.str(); }

}  // namespace

VerifyReport run_verify(const FuncExpr& f, const std::string& label) {
    VerifyReport rep;
    rep.function = label;
    rep.analytic = f.is_leaf();

    Pizza p = build_pizza(f);

    {
        CheckResult c;
        c.name = "continuity";
        ContinuityReport cr = check_continuity(p);
        c.pass = cr.continuous;
        c.applicable = rep.analytic;
        if (!cr.continuous) {
            std::ostringstream os;
            for (const auto& m : cr.mismatches)
                os << "width mismatch at q = " << qstr(m.q) << " across '"
                   << render_arc(p.pieces[m.piece_a].right) << "': values " << qstr(m.width_a)
                   << " and " << qstr(m.width_b) << "; ";
            c.details = os.str();
        }
        rep.checks.push_back(std::move(c));
    }

    {
        CheckResult c;
        c.name = "positive-slope";
        SlopeReport sr = check_monotone_slope(p, f);
        c.pass = sr.ok;
        c.applicable = rep.analytic;
        std::ostringstream os;
        if (!sr.ok)
            for (const auto& v : sr.violations) os << "piece " << v.piece << ": " << v.what << "; ";
        os << "slopes:";
        for (const Rational& s : sr.slopes) os << " " << s.str();
        c.details = os.str();
        rep.checks.push_back(std::move(c));
    }

    {
        CheckResult c;
        c.name = "genericity";
        c.applicable = rep.analytic;
        int tested = 0, generic = 0;
        std::ostringstream os;
        for (const PizzaPiece& piece : p.pieces) {
            for (const Arc* a : {&piece.left, &piece.right}) {
                if (tested >= 16) break;
                if (ord_on_arc(f, *a).is_inf()) continue;
                ++tested;
                Witnesses w = genericity_witnesses(f, *a);
                if (w.generic)
                    ++generic;
                else
                    os << "non-generic at '" << render_arc(*a) << "' (" << w.note << "); ";
            }
        }
        if (tested == 0) {
            Arc axis{Chart::x_graph, 1, PuiseuxPoly()};
            if (!ord_on_arc(f, axis).is_inf()) {
                ++tested;
                if (genericity_witnesses(f, axis).generic) ++generic;
            }
        }
        c.pass = (generic == tested);
        std::ostringstream head;
        head << generic << "/" << tested << " sampled arcs generic. " << os.str();
        c.details = head.str();
        rep.checks.push_back(std::move(c));
    }

    {
        CheckResult c;
        c.name = "multiplicity-width";
        if (!rep.analytic) {
            c.applicable = false;
            c.pass = true;
            c.details = "not applicable to min/max input";
        } else {
            long m = f.leaf().multiplicity();
            Lcg rng(0xC0FFEEull);
            int done = 0, okc = 0, guard = 0;
            std::ostringstream os;
            while (done < 10 && ++guard < 400) {
                Rational slope(rng.range(-12, 12), rng.range(1, 6));
                if (abs(slope) > Rational(1)) continue;
                Arc a{Chart::x_graph, rng.range(0, 1) ? 1 : -1,
                      slope.is_zero() ? PuiseuxPoly()
                                      : PuiseuxPoly::monomial(Rational(1), FieldElement(slope))};
                if (ord_on_arc(f, a) != QInf(Rational(m))) continue;  // critical direction
                ++done;
                if (zone_size(f, a) == QInf(Rational(1)))
                    ++okc;
                else
                    os << "width != 1 along '" << render_arc(a) << "'; ";
            }
            c.pass = (done > 0 && okc == done);
            std::ostringstream head;
            head << okc << "/" << done << " non-critical lines have order " << m
                 << " and width 1. " << os.str();
            c.details = head.str();
        }
        rep.checks.push_back(std::move(c));
    }

    rep.all_pass = true;
    for (const CheckResult& c : rep.checks)
        if (c.applicable && !c.pass) rep.all_pass = false;
    if (rep.analytic)
        rep.status = rep.all_pass ? "ok" : "violations";
    else
        rep.status = "subanalytic: theorems not guaranteed";
    return rep;
}

}  // namespace pizza
