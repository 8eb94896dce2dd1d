#include "pizza/puiseux.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace pizza {

// ---------------------------------------------------------------------------
// PuiseuxPoly
// ---------------------------------------------------------------------------

PuiseuxPoly PuiseuxPoly::monomial(Rational e, FieldElement c) {
    PuiseuxPoly p;
    if (!c.is_zero()) p.t_.push_back({std::move(e), std::move(c)});
    return p;
}

PuiseuxPoly PuiseuxPoly::from_terms(std::vector<Term> terms) {
    PuiseuxPoly p;
    p.t_ = std::move(terms);
    p.normalize();
    return p;
}

void PuiseuxPoly::normalize() {
    std::sort(t_.begin(), t_.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    for (auto& term : t_) {
        if (!out.empty() && out.back().first == term.first) {
            out.back().second = out.back().second + term.second;
        } else {
            out.push_back(std::move(term));
        }
    }
    t_.clear();
    for (auto& term : out)
        if (!term.second.is_zero()) t_.push_back(std::move(term));
}

std::optional<Rational> PuiseuxPoly::ord() const {
    if (t_.empty()) return std::nullopt;
    return t_.front().first;
}

const FieldElement& PuiseuxPoly::lead_coeff() const {
    if (t_.empty()) throw std::logic_error("PuiseuxPoly: zero has no leading coefficient");
    return t_.front().second;
}

Rational PuiseuxPoly::last_exponent() const {
    if (t_.empty()) throw std::logic_error("PuiseuxPoly: zero has no last exponent");
    return t_.back().first;
}

FieldElement PuiseuxPoly::coeff_at(const Rational& e) const {
    for (const auto& [be, c] : t_)
        if (be == e) return c;
    return FieldElement(0);
}

PuiseuxPoly operator+(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    std::vector<PuiseuxPoly::Term> t = a.t_;
    for (const auto& term : b.t_) t.push_back(term);
    return PuiseuxPoly::from_terms(std::move(t));
}

PuiseuxPoly PuiseuxPoly::operator-() const {
    PuiseuxPoly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
}

PuiseuxPoly operator-(const PuiseuxPoly& a, const PuiseuxPoly& b) { return a + (-b); }

PuiseuxPoly operator*(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    std::vector<PuiseuxPoly::Term> t;
    t.reserve(a.t_.size() * b.t_.size());
    for (const auto& [ea, ca] : a.t_)
        for (const auto& [eb, cb] : b.t_) t.push_back({ea + eb, ca * cb});
    return PuiseuxPoly::from_terms(std::move(t));
}

PuiseuxPoly PuiseuxPoly::scaled(const FieldElement& s) const {
    if (s.is_zero()) return PuiseuxPoly();
    PuiseuxPoly r = *this;
    for (auto& [e, c] : r.t_) c = c * s;
    r.normalize();  // a scale by a zero-divisor representation could vanish values
    return r;
}

PuiseuxPoly PuiseuxPoly::shifted(const Rational& e) const {
    PuiseuxPoly r = *this;
    for (auto& [be, c] : r.t_) be = be + e;
    return r;
}

PuiseuxPoly PuiseuxPoly::pow(int e) const {
    PuiseuxPoly r = PuiseuxPoly::monomial(Rational(0), FieldElement(1));
    for (int k = 0; k < e; ++k) r = r * *this;
    return r;
}

bool operator==(const PuiseuxPoly& a, const PuiseuxPoly& b) { return (a - b).is_zero(); }

PuiseuxPoly PuiseuxPoly::prefix(size_t n_terms) const {
    PuiseuxPoly r;
    r.t_.assign(t_.begin(), t_.begin() + std::min(n_terms, t_.size()));
    return r;
}

PuiseuxPoly PuiseuxPoly::truncated_above(const Rational& e) const {
    PuiseuxPoly r;
    for (const auto& term : t_)
        if (term.first <= e) r.t_.push_back(term);
    return r;
}

BigInt PuiseuxPoly::exponent_denominator() const {
    BigInt d(1);
    for (const auto& [e, c] : t_) d = lcm(d, e.den());
    return d;
}

double PuiseuxPoly::eval_double(double u) const {
    double sum = 0.0;
    for (const auto& [e, c] : t_) sum += c.to_double() * std::pow(u, e.to_double());
    return sum;
}

std::string PuiseuxPoly::str(const std::string& var) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (!e.is_zero()) {
            os << "*" << var;
            if (!(e.is_one())) os << "^(" << e.str() << ")";
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// substitution f(u, g(u) + z)
// ---------------------------------------------------------------------------

PuiseuxInZ substitute(const BivarPoly& f, const PuiseuxPoly& g, const Rational& precision) {
    int dy = f.deg_y();
    std::vector<PuiseuxPoly> gpow(dy + 1);
    gpow[0] = PuiseuxPoly::monomial(Rational(0), FieldElement(1));
    for (int k = 1; k <= dy; ++k) gpow[k] = gpow[k - 1] * g;

    // binomial table
    std::vector<std::vector<BigInt>> C(dy + 1, std::vector<BigInt>(dy + 1, BigInt(0)));
    for (int n = 0; n <= dy; ++n) {
        C[n][0] = BigInt(1);
        for (int k = 1; k <= n; ++k)
            C[n][k] = C[n - 1][k - 1] + (k <= n - 1 ? C[n - 1][k] : BigInt(0));
    }

    PuiseuxInZ F;
    F.cj.assign(dy + 1, PuiseuxPoly());
    F.precision = precision;
    for (const auto& [e, c] : f.terms()) {
        int i = e.first, j = e.second;
        for (int k = 0; k <= j; ++k) {
            FieldElement coef = c * FieldElement(Rational(C[j][k]));
            PuiseuxPoly contrib = gpow[j - k].scaled(coef).shifted(Rational(i));
            F.cj[k] = F.cj[k] + contrib;
        }
    }
    while (!F.cj.empty() && F.cj.back().is_zero()) F.cj.pop_back();
    F.z0_exactly_zero = F.cj.empty() || F.cj[0].is_zero();
    return F;
}

// ---------------------------------------------------------------------------
// Newton polygon (lower hull of (nu_j, j))
// ---------------------------------------------------------------------------

Rational NewtonPolygon::pi(const Rational& T) const {
    bool first = true;
    Rational m;
    for (const auto& [nu, j] : support) {
        Rational v = nu + Rational(j) * T;
        if (first || v < m) {
            m = v;
            first = false;
        }
    }
    if (first) throw std::logic_error("NewtonPolygon::pi: empty support");
    return m;
}

const NPEdge* NewtonPolygon::stab_edge() const {
    for (const auto& e : edges)
        if (e.j_lo == 0) return &e;
    return nullptr;
}

std::optional<Rational> NewtonPolygon::T0() const {
    const NPEdge* e = stab_edge();
    if (!e) return std::nullopt;
    return e->T;
}

std::optional<int> NewtonPolygon::j0() const {
    const NPEdge* e = stab_edge();
    if (!e) return std::nullopt;
    return e->j_hi;
}

NewtonPolygon newton_polygon(const PuiseuxInZ& F) {
    NewtonPolygon np;
    for (size_t j = 0; j < F.cj.size(); ++j) {
        if (F.cj[j].is_zero()) continue;
        np.support.push_back({*F.cj[j].ord(), int(j)});
        if (j == 0) np.nu0 = *F.cj[j].ord();
    }
    if (np.support.empty())
        throw std::invalid_argument("newton_polygon: F has no nonzero coefficient");

    // lower convex hull of points (j, nu_j) as j increases; slopes strictly
    // increase along the hull, so breakpoints T = -slope strictly decrease
    std::vector<std::pair<Rational, int>> hull;  // (nu, j)
    for (const auto& p : np.support) {
        while (hull.size() >= 2) {
            const auto& [nu1, j1] = hull[hull.size() - 2];
            const auto& [nu2, j2] = hull[hull.size() - 1];
            // drop hull[-1] if it lies on or above segment hull[-2] -> p
            Rational lhs = (nu2 - nu1) * Rational(p.second - j1);
            Rational rhs = (p.first - nu1) * Rational(j2 - j1);
            if (lhs >= rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        const auto& [nu_a, j_a] = hull[k];
        const auto& [nu_b, j_b] = hull[k + 1];
        NPEdge e;
        e.j_lo = j_a;
        e.j_hi = j_b;
        e.T = (nu_a - nu_b) / Rational(j_b - j_a);
        e.value_lo = nu_a;
        // edge polynomial: support points lying exactly on the segment
        std::vector<FieldElement> coeffs(j_b - j_a + 1, FieldElement(0));
        for (const auto& [nu, j] : np.support) {
            if (j < j_a || j > j_b) continue;
            Rational on_line = nu_a - e.T * Rational(j - j_a);
            if (nu == on_line) coeffs[j - j_a] = F.cj[j].lead_coeff();
        }
        e.poly = UniPoly(std::move(coeffs));
        np.edges.push_back(std::move(e));
    }
    return np;
}

}  // namespace pizza
