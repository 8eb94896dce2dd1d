#include "pizza/field.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace pizza {

long max_refine_bits = 4096;

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

FieldElement FieldElement::make(TowerPtr t, std::vector<FieldElement> coeffs) {
    if (!t) {
        if (coeffs.size() > 1) throw std::logic_error("FieldElement::make: constant expected");
        return coeffs.empty() ? FieldElement() : std::move(coeffs[0]);
    }
    FieldElement e;
    e.tower_ = std::move(t);
    e.rat_ = Rational(0);
    e.coeffs_ = std::move(coeffs);
    e.normalize();
    return e;
}

FieldElement FieldElement::generator(const TowerPtr& t) {
    return make(t, {FieldElement(0), FieldElement(1)});
}

void FieldElement::normalize() {
    if (!tower_) {
        coeffs_.clear();
        return;
    }
    if (int(coeffs_.size()) > tower_->degree()) {
        UniPoly r = UniPoly::rem(UniPoly(std::move(coeffs_)), tower_->minpoly());
        coeffs_ = r.coeffs();
    }
    for (auto& c : coeffs_) {
        bool literal_zero = c.is_rational() && c.rat_.is_zero();
        if (!literal_zero && c.is_zero()) c = FieldElement();
    }
    while (!coeffs_.empty() && coeffs_.back().is_rational() && coeffs_.back().rat_.is_zero())
        coeffs_.pop_back();
    if (coeffs_.empty()) {
        tower_ = nullptr;
        rat_ = Rational(0);
        return;
    }
    if (coeffs_.size() == 1) {
        FieldElement c = std::move(coeffs_[0]);
        *this = std::move(c);
    }
}

bool Tower::is_prefix(const TowerPtr& a, const TowerPtr& b) {
    if (!a) return true;
    for (const Tower* t = b.get(); t; t = t->parent().get())
        if (t == a.get()) return true;
    return false;
}

TowerPtr Tower::join(const TowerPtr& a, const TowerPtr& b) {
    if (is_prefix(a, b)) return b;
    if (is_prefix(b, a)) return a;
    throw IncompatibleTowers();
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    if (a.is_rational() && b.is_rational()) return FieldElement(a.rat_ + b.rat_);
    if (a.tower_ == b.tower_) {
        std::vector<FieldElement> c = a.coeffs_;
        if (c.size() < b.coeffs_.size()) c.resize(b.coeffs_.size());
        for (size_t i = 0; i < b.coeffs_.size(); ++i) c[i] = c[i] + b.coeffs_[i];
        return FieldElement::make(a.tower_, std::move(c));
    }
    if (Tower::is_prefix(a.tower_, b.tower_)) {
        std::vector<FieldElement> c = b.coeffs_;
        c[0] = c[0] + a;
        return FieldElement::make(b.tower_, std::move(c));
    }
    if (Tower::is_prefix(b.tower_, a.tower_)) return b + a;
    throw IncompatibleTowers();
}

FieldElement FieldElement::operator-() const {
    if (is_rational()) return FieldElement(-rat_);
    FieldElement r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;  // still canonical
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    if (a.is_rational() && b.is_rational()) return FieldElement(a.rat_ * b.rat_);
    if (a.tower_ == b.tower_) {
        UniPoly prod = UniPoly(a.coeffs_) * UniPoly(b.coeffs_);
        return FieldElement::make(a.tower_, UniPoly::rem(prod, a.tower_->minpoly()).coeffs());
    }
    if (Tower::is_prefix(a.tower_, b.tower_)) {
        std::vector<FieldElement> c = b.coeffs_;
        for (auto& ci : c) ci = ci * a;
        return FieldElement::make(b.tower_, std::move(c));
    }
    if (Tower::is_prefix(b.tower_, a.tower_)) return b * a;
    throw IncompatibleTowers();
}

FieldElement FieldElement::inverse() const {
    if (is_rational()) {
        if (rat_.is_zero()) throw std::domain_error("FieldElement: division by zero");
        return FieldElement(rat_.inverse());
    }
    if (is_zero()) throw std::domain_error("FieldElement: division by zero");
    UniPoly A(coeffs_);
    const UniPoly& M = tower_->minpoly();
    ExtGcd eg = ext_gcd(A, M);
    if (eg.g.degree() == 0) return make(tower_, UniPoly::rem(eg.u, M).coeffs());
    // zero divisor in the representation ring: the selected root lies in M / g
    UniPoly M1 = UniPoly::div_exact(M, eg.g);
    ExtGcd eg1 = ext_gcd(UniPoly::rem(A, M1), M1);
    if (eg1.g.degree() != 0) throw std::logic_error("FieldElement::inverse: bad gcd split");
    return make(tower_, UniPoly::rem(eg1.u, M1).coeffs());
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

FieldElement FieldElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement r(1), base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

RatInterval FieldElement::ival() const {
    if (is_rational()) return RatInterval::point(rat_);
    return UniPoly(coeffs_).ival_at(tower_->iso());
}

namespace {
void refine_chain(const TowerPtr& t, int rounds) {
    for (const Tower* p = t.get(); p; p = p->parent().get()) p->refine(rounds);
}
}  // namespace

RatInterval FieldElement::ival_refined(const Rational& w) const {
    if (is_rational()) return RatInterval::point(rat_);
    long guard = 0;
    RatInterval I = ival();
    while (I.width() > w) {
        if (++guard > max_refine_bits) throw RefinementLimit("interval refinement cap reached");
        refine_chain(tower_, 2);
        I = ival();
    }
    return I;
}

double FieldElement::to_double() const {
    if (is_rational()) return rat_.to_double();
    RatInterval I = ival_refined(Rational(BigInt(1), BigInt("1000000000000000000")));
    return I.mid().to_double();
}

bool FieldElement::is_zero() const {
    if (is_rational()) return rat_.is_zero();
    if (ival().certified_sign() != 0) return false;
    for (int r = 0; r < 2; ++r) {
        refine_chain(tower_, 4);
        if (ival().certified_sign() != 0) return false;
    }
    // symbolic decision: a(root) = 0 iff the root lies in gcd(rep, minpoly)
    UniPoly A(coeffs_);
    const UniPoly& M = tower_->minpoly();
    UniPoly g = gcd(A, M);
    if (g.degree() == 0) return false;
    UniPoly h = UniPoly::div_exact(M, g);
    long guard = 0;
    while (true) {
        if (g.ival_at(tower_->iso()).certified_sign() != 0) return false;
        if (h.ival_at(tower_->iso()).certified_sign() != 0) return true;
        if (++guard > max_refine_bits) throw RefinementLimit("zero-certificate refinement cap");
        tower_->refine(2);
    }
}

int FieldElement::sign() const {
    if (is_rational()) return rat_.sign();
    if (int s = ival().certified_sign()) return s;
    if (is_zero()) return 0;
    long guard = 0;
    while (true) {
        if (++guard > max_refine_bits) throw RefinementLimit("sign refinement cap reached");
        refine_chain(tower_, 4);
        if (int s = ival().certified_sign()) return s;
    }
}

bool FieldElement::is_one() const {
    if (is_rational()) return rat_.is_one();
    return (*this - FieldElement(1)).is_zero();
}

std::string FieldElement::str() const {
    if (is_rational()) return rat_.str();
    std::ostringstream os;
    std::string g = "g" + std::to_string(tower_->height());
    bool first = true;
    for (int i = int(coeffs_.size()) - 1; i >= 0; --i) {
        const FieldElement& c = coeffs_[i];
        if (c.is_rational() && c.rational().is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << c.str();
            continue;
        }
        os << "(" << c.str() << ")*" << g;
        if (i > 1) os << "^" << i;
    }
    if (first) os << "0";
    return os.str();
}

int cross_cmp(const FieldElement& a, const FieldElement& b) {
    if (Tower::is_prefix(a.tower(), b.tower()) || Tower::is_prefix(b.tower(), a.tower()))
        return (a - b).sign();
    auto race = [&](long rounds) -> std::optional<int> {
        for (long r = 0; r < rounds; ++r) {
            RatInterval Ia = a.ival(), Ib = b.ival();
            if (Ia.hi < Ib.lo) return -1;
            if (Ib.hi < Ia.lo) return 1;
            refine_chain(a.tower(), 2);
            refine_chain(b.tower(), 2);
        }
        return std::nullopt;
    };
    if (auto s = race(24)) return *s;
    // exact conjugate test: are a and b the same algebraic number?
    std::vector<Rational> mp = min_poly_over_Q(a);
    std::vector<FieldElement> pc(mp.size());
    for (size_t i = 0; i < mp.size(); ++i) pc[i] = FieldElement(mp[i]);
    UniPoly P(pc);
    if (P.eval(b).is_zero()) {
        RootIsolation iso = isolate_real_roots(P);
        auto locate = [&](const FieldElement& x) -> size_t {
            long guard = 0;
            while (true) {
                RatInterval I = x.ival();
                for (size_t i = 0; i < iso.roots.size(); ++i) {
                    const RatInterval& R = iso.roots[i].iso;
                    if (R.lo <= I.lo && I.hi <= R.hi) return i;
                }
                if (++guard > max_refine_bits) throw RefinementLimit("conjugate location cap");
                refine_chain(x.tower(), 2);
            }
        };
        if (locate(a) == locate(b)) return 0;
    }
    // distinct numbers: the race terminates
    if (auto s = race(max_refine_bits)) return *s;
    throw RefinementLimit("cross_cmp refinement cap reached");
}

// ---------------------------------------------------------------------------
// UniPoly
// ---------------------------------------------------------------------------

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<FieldElement> c = a.c_;
    if (c.size() < b.c_.size()) c.resize(b.c_.size());
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
    return UniPoly(std::move(c));
}

UniPoly UniPoly::operator-() const {
    std::vector<FieldElement> c = c_;
    for (auto& x : c) x = -x;
    UniPoly r;
    r.c_ = std::move(c);  // negation preserves value-normalization
    return r;
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<FieldElement> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    return UniPoly(std::move(c));
}

UniPoly UniPoly::scaled(const FieldElement& s) const {
    std::vector<FieldElement> c = c_;
    for (auto& x : c) x = x * s;
    return UniPoly(std::move(c));
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<FieldElement> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * FieldElement(long(i));
    return UniPoly(std::move(c));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(lc().inverse());
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::domain_error("UniPoly: division by zero polynomial");
    UniPoly r = a;
    int db = b.degree();
    if (r.degree() < db) return {UniPoly(), r};
    FieldElement inv_lc = b.lc().inverse();
    std::vector<FieldElement> q(r.degree() - db + 1);
    while (!r.is_zero() && r.degree() >= db) {
        int k = r.degree() - db;
        FieldElement f = r.lc() * inv_lc;
        q[k] = f;
        std::vector<FieldElement> rc = r.coeffs();
        for (int i = 0; i <= db; ++i) rc[k + i] = rc[k + i] - f * b[i];
        rc[k + db] = FieldElement(0);  // exact cancellation by construction
        r = UniPoly(std::move(rc));
    }
    return {UniPoly(std::move(q)), std::move(r)};
}

UniPoly UniPoly::div_exact(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::logic_error("UniPoly::div_exact: inexact division");
    return std::move(q);
}

FieldElement UniPoly::eval(const FieldElement& x) const {
    FieldElement r(0);
    for (int i = int(c_.size()) - 1; i >= 0; --i) r = r * x + c_[i];
    return r;
}

RatInterval UniPoly::ival_at(const RatInterval& x) const {
    RatInterval r = RatInterval::point(Rational(0));
    for (int i = int(c_.size()) - 1; i >= 0; --i) r = r * x + c_[i].ival();
    return r;
}

std::string UniPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c_[i].is_rational() && c_[i].rational().is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c_[i].str() << ")";
        if (i >= 1) {
            os << "*" << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly A = a, B = b;
    while (!B.is_zero()) {
        UniPoly R = UniPoly::rem(A, B);
        A = std::move(B);
        B = std::move(R);
    }
    return A.is_zero() ? A : A.monic();
}

ExtGcd ext_gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly r0 = a, r1 = b;
    UniPoly u0 = UniPoly::constant(FieldElement(1)), u1;
    UniPoly v0, v1 = UniPoly::constant(FieldElement(1));
    while (!r1.is_zero()) {
        auto [q, r2] = UniPoly::divmod(r0, r1);
        UniPoly u2 = u0 - q * u1;
        UniPoly v2 = v0 - q * v1;
        r0 = std::move(r1); r1 = std::move(r2);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (r0.is_zero()) return {r0, u0, v0};
    FieldElement s = r0.lc().inverse();
    return {r0.scaled(s), u0.scaled(s), v0.scaled(s)};
}

std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p) {
    std::vector<std::pair<UniPoly, int>> parts;
    if (p.degree() <= 0) return parts;
    UniPoly f = p.monic();
    UniPoly fp = f.derivative();
    UniPoly g = gcd(f, fp);
    if (g.degree() == 0) {
        parts.push_back({f, 1});
        return parts;
    }
    UniPoly c = UniPoly::div_exact(f, g);
    UniPoly w = UniPoly::div_exact(fp, g) - c.derivative();
    int i = 1;
    while (c.degree() > 0) {
        UniPoly a = gcd(c, w);
        if (a.degree() > 0) parts.push_back({a, i});
        c = UniPoly::div_exact(c, a);
        w = UniPoly::div_exact(w, a) - c.derivative();
        ++i;
    }
    return parts;
}

FieldElement resultant(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return FieldElement(0);
    if (b.degree() == 0) return b.lc().pow(a.degree());
    if (a.degree() == 0) return a.lc().pow(b.degree());
    if (a.degree() < b.degree()) {
        FieldElement s((a.degree() * b.degree()) % 2 ? -1 : 1);
        return s * resultant(b, a);
    }
    UniPoly r = UniPoly::rem(a, b);
    if (r.is_zero()) return FieldElement(0);
    FieldElement s((a.degree() * b.degree()) % 2 ? -1 : 1);
    return s * b.lc().pow(a.degree() - r.degree()) * resultant(b, r);
}

// ---------------------------------------------------------------------------
// Tower
// ---------------------------------------------------------------------------

Tower::Tower(TowerPtr parent, UniPoly minpoly, RatInterval iso, int slo, int shi)
    : parent_(std::move(parent)),
      minpoly_(std::move(minpoly)),
      height_(parent_ ? parent_->height() + 1 : 1),
      iso_(std::move(iso)),
      sign_lo_(slo),
      sign_hi_(shi) {
    if (minpoly_.degree() < 2) throw std::logic_error("Tower: degree-1 levels must not be built");
}

RatInterval Tower::iso() const { return iso_; }

void Tower::refine(int rounds) const {
    for (int r = 0; r < rounds; ++r) {
        if (iso_.is_point()) return;
        Rational mid = iso_.mid();
        int s = minpoly_.eval(FieldElement(mid)).sign();
        if (s == 0) {
            iso_ = RatInterval::point(mid);
            sign_lo_ = sign_hi_ = 0;
            return;
        }
        if (s == sign_lo_)
            iso_.lo = mid;
        else
            iso_.hi = mid;
    }
}

void Tower::refine_to_width(const Rational& w) const {
    long guard = 0;
    while (iso_.width() > w) {
        if (++guard > max_refine_bits) throw RefinementLimit("tower refinement cap reached");
        refine(1);
    }
}

// ---------------------------------------------------------------------------
// extend_tower, root isolation
// ---------------------------------------------------------------------------

namespace {

// bisect an isolating interval of square-free g, keeping one sign change
void bisect_once(const UniPoly& g, RatInterval& I, int& slo, int& shi) {
    if (I.is_point()) return;
    Rational mid = I.mid();
    int s = g.eval(FieldElement(mid)).sign();
    if (s == 0) {
        I = RatInterval::point(mid);
        slo = shi = 0;
        return;
    }
    if (s == slo)
        I.lo = mid;
    else
        I.hi = mid;
}

// bounded search for a rational root inside an isolating interval
std::optional<Rational> detect_rational_root(const UniPoly& g, RatInterval I, int slo, int shi,
                                             int rounds = 12) {
    for (int r = 0; r < rounds; ++r) {
        if (I.is_point()) return I.lo;
        Rational cand = simplest_in(I.lo, I.hi);
        if (cand.den() > BigInt("1000000000")) return std::nullopt;
        if (g.eval(FieldElement(cand)).is_zero()) return cand;
        bisect_once(g, I, slo, shi);
        if (I.is_point()) return I.lo;
    }
    return std::nullopt;
}

int variations(const std::vector<UniPoly>& chain, const Rational& x) {
    int var = 0, last = 0;
    FieldElement fx(x);
    for (const UniPoly& p : chain) {
        int s = p.eval(fx).sign();
        if (s == 0) continue;
        if (last != 0 && s != last) ++var;
        last = s;
    }
    return var;
}

// rational upper bound on |e|
Rational abs_upper_bound(const FieldElement& e) {
    return e.ival_refined(Rational(1)).abs_upper();
}

// rational positive lower bound on |e| for nonzero e
Rational abs_lower_bound(const FieldElement& e) {
    if (e.is_rational()) return abs(e.rational());
    RatInterval I = e.ival();
    long guard = 0;
    while (I.certified_sign() == 0) {
        if (++guard > max_refine_bits) throw RefinementLimit("abs_lower_bound cap");
        refine_chain(e.tower(), 2);
        I = e.ival();
    }
    return I.certified_sign() > 0 ? I.lo : abs(I.hi);
}

struct IsolatedRoot {
    std::optional<Rational> exact;
    RatInterval iso;
    int slo = 0, shi = 0;
};

// all real roots of square-free g, ascending
std::vector<IsolatedRoot> isolate_squarefree(const UniPoly& g) {
    std::vector<IsolatedRoot> out;
    if (g.degree() <= 0) return out;
    if (g.degree() == 1) {
        FieldElement root = -(g[0] / g[1]);
        IsolatedRoot r;
        if (auto q = root.as_rational()) {
            r.exact = *q;
            r.iso = RatInterval::point(*q);
        } else {
            // root lives in the coefficient tower; callers treat a point-less
            // non-rational root through its enclosure
            RatInterval I = root.ival_refined(Rational(1, 64));
            r.iso = I;
        }
        out.push_back(std::move(r));
        return out;
    }
    std::vector<UniPoly> chain = sturm_chain(g);
    // Cauchy bound
    Rational maxc(0);
    for (int i = 0; i < g.degree(); ++i) {
        Rational u = abs_upper_bound(g[i]);
        if (u > maxc) maxc = u;
    }
    Rational B = Rational(1) + maxc / abs_lower_bound(g.lc());

    struct Seg {
        Rational lo, hi;
        int vlo, vhi;
    };
    std::vector<Seg> stack;
    int vlo = variations(chain, -B), vhi = variations(chain, B);
    stack.push_back({-B, B, vlo, vhi});
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        int n = s.vlo - s.vhi;
        if (n <= 0) continue;
        if (n == 1) {
            IsolatedRoot r;
            r.iso = RatInterval(s.lo, s.hi);
            r.slo = g.eval(FieldElement(s.lo)).sign();
            r.shi = g.eval(FieldElement(s.hi)).sign();
            if (auto q = detect_rational_root(g, r.iso, r.slo, r.shi)) {
                r.exact = *q;
                r.iso = RatInterval::point(*q);
            }
            out.push_back(std::move(r));
            continue;
        }
        Rational mid = (s.lo + s.hi) / Rational(2);
        if (g.eval(FieldElement(mid)).is_zero()) {
            // exact root at the midpoint: nudge around it
            Rational eps = (s.hi - s.lo) / Rational(16);
            long guard = 0;
            while (true) {
                if (++guard > 64) throw std::logic_error("isolate: nudge failure");
                Rational a = mid - eps, b = mid + eps;
                if (g.eval(FieldElement(a)).is_zero() || g.eval(FieldElement(b)).is_zero()) {
                    eps = eps / Rational(2);
                    continue;
                }
                int va = variations(chain, a), vb = variations(chain, b);
                if (va - vb != 1) {  // extra roots hiding near mid
                    eps = eps / Rational(2);
                    continue;
                }
                IsolatedRoot r;
                r.exact = mid;
                r.iso = RatInterval::point(mid);
                out.push_back(std::move(r));
                stack.push_back({s.lo, a, s.vlo, va});
                stack.push_back({b, s.hi, vb, s.vhi});
                break;
            }
            continue;
        }
        int vm = variations(chain, mid);
        stack.push_back({s.lo, mid, s.vlo, vm});
        stack.push_back({mid, s.hi, vm, s.vhi});
    }
    std::sort(out.begin(), out.end(),
              [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.iso.lo < b.iso.lo; });
    return out;
}

}  // namespace

std::vector<UniPoly> sturm_chain(const UniPoly& g) {
    std::vector<UniPoly> chain;
    auto pos_scale = [](const UniPoly& p) {  // scale by a positive constant only
        FieldElement s((p.lc().sign() > 0) ? 1 : -1);
        return p.scaled(p.lc().inverse() * s);
    };
    chain.push_back(pos_scale(g));
    UniPoly d = g.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(pos_scale(d));
    while (true) {
        const UniPoly& a = chain[chain.size() - 2];
        const UniPoly& b = chain[chain.size() - 1];
        UniPoly r = -UniPoly::rem(a, b);
        if (r.is_zero()) break;
        chain.push_back(pos_scale(r));
        if (chain.back().degree() == 0) break;
    }
    return chain;
}

int sturm_count(const std::vector<UniPoly>& chain, const Rational& a, const Rational& b) {
    return variations(chain, a) - variations(chain, b);
}

std::pair<TowerPtr, FieldElement> extend_tower(const TowerPtr& base, const UniPoly& p,
                                               const RatInterval& iso) {
    if (p.degree() < 1) throw std::invalid_argument("extend_tower: constant polynomial");
    UniPoly pm = p.monic();
    if (gcd(pm, pm.derivative()).degree() != 0)
        throw std::invalid_argument("extend_tower: polynomial is not square-free over the base");
    if (pm.degree() == 1) return {base, -pm[0]};

    FieldElement plo = pm.eval(FieldElement(iso.lo));
    if (plo.is_zero()) return {base, FieldElement(iso.lo)};
    FieldElement phi = pm.eval(FieldElement(iso.hi));
    if (phi.is_zero()) return {base, FieldElement(iso.hi)};
    int slo = plo.sign(), shi = phi.sign();
    if (slo == shi)
        throw std::invalid_argument("extend_tower: interval does not isolate a root");
    auto chain = sturm_chain(pm);
    if (sturm_count(chain, iso.lo, iso.hi) != 1)
        throw std::invalid_argument("extend_tower: interval contains more than one root");

    RatInterval I = iso;
    if (auto q = detect_rational_root(pm, I, slo, shi)) return {base, FieldElement(*q)};
    auto t = std::make_shared<Tower>(base, pm, I, slo, shi);
    return {TowerPtr(t), FieldElement::generator(t)};
}

RootIsolation isolate_real_roots(const UniPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
    RootIsolation out;
    auto parts = squarefree_decomposition(p);
    for (auto& [g, mult] : parts) {
        auto roots = isolate_squarefree(g);
        for (auto& r : roots) {
            RealRoot rr;
            if (r.exact) rr.exact = FieldElement(*r.exact);
            rr.iso = r.iso;
            rr.sqfree_factor = g;
            rr.multiplicity = mult;
            out.roots.push_back(std::move(rr));
        }
        out.complex_pairs += long(mult) * (g.degree() - long(roots.size())) / 2;
    }
    // order roots across square-free parts (parts are coprime, so roots are
    // distinct; refine until the enclosures separate)
    std::vector<std::pair<RatInterval, std::pair<int, int>>> work;  // interval + endpoint signs
    std::vector<size_t> idx(out.roots.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    auto before = [&](size_t ia, size_t ib) {
        RealRoot& a = out.roots[ia];
        RealRoot& b = out.roots[ib];
        int sa_lo = 0, sa_hi = 0, sb_lo = 0, sb_hi = 0;
        if (!a.iso.is_point()) {
            sa_lo = a.sqfree_factor.eval(FieldElement(a.iso.lo)).sign();
            sa_hi = a.sqfree_factor.eval(FieldElement(a.iso.hi)).sign();
        }
        if (!b.iso.is_point()) {
            sb_lo = b.sqfree_factor.eval(FieldElement(b.iso.lo)).sign();
            sb_hi = b.sqfree_factor.eval(FieldElement(b.iso.hi)).sign();
        }
        long guard = 0;
        while (!(a.iso.hi < b.iso.lo || b.iso.hi < a.iso.lo)) {
            if (++guard > max_refine_bits) throw RefinementLimit("root ordering cap");
            bisect_once(a.sqfree_factor, a.iso, sa_lo, sa_hi);
            bisect_once(b.sqfree_factor, b.iso, sb_lo, sb_hi);
        }
        return a.iso.hi < b.iso.lo;
    };
    std::sort(idx.begin(), idx.end(), [&](size_t x, size_t y) {
        if (x == y) return false;
        return before(x, y);
    });
    std::vector<RealRoot> sorted;
    sorted.reserve(out.roots.size());
    for (size_t i : idx) sorted.push_back(std::move(out.roots[i]));
    out.roots = std::move(sorted);
    return out;
}

std::vector<Rational> min_poly_over_Q(const FieldElement& a) {
    if (a.is_rational()) return {-a.rational(), Rational(1)};
    // dimension of the tower as a Q-vector space
    std::vector<const Tower*> levels;
    for (const Tower* t = a.tower().get(); t; t = t->parent().get()) levels.push_back(t);
    std::reverse(levels.begin(), levels.end());
    long D = 1;
    for (auto* t : levels) D *= t->degree();

    // flatten an element into the Q-basis of the full tower
    std::function<void(const FieldElement&, size_t, long, long, std::vector<Rational>&)> flat =
        [&](const FieldElement& e, size_t level, long offset, long stride,
            std::vector<Rational>& v) {
            if (level == 0) {
                if (!e.is_rational()) throw std::logic_error("min_poly: bad tower alignment");
                v[offset] = v[offset] + e.rational();
                return;
            }
            const Tower* t = levels[level - 1];
            long sub = stride / t->degree();
            if (e.tower().get() == t) {
                for (size_t i = 0; i < e.coeffs().size(); ++i)
                    flat(e.coeffs()[i], level - 1, offset + long(i) * sub, sub, v);
            } else {
                flat(e, level - 1, offset, sub, v);
            }
        };
    auto flatten = [&](const FieldElement& e) {
        std::vector<Rational> v(D);
        flat(e, levels.size(), 0, D, v);
        return v;
    };

    // incremental elimination over powers of a
    std::vector<std::vector<Rational>> rows;    // echelon rows
    std::vector<std::vector<Rational>> combos;  // same combination in power basis
    std::vector<long> pivots;
    FieldElement pk(1);
    for (long k = 0;; ++k) {
        std::vector<Rational> v = flatten(pk);
        std::vector<Rational> combo(k + 1);
        combo[k] = Rational(1);
        for (size_t r = 0; r < rows.size(); ++r) {
            Rational f = v[pivots[r]];
            if (f.is_zero()) continue;
            for (long j = 0; j < D; ++j) v[j] = v[j] - f * rows[r][j];
            combo.resize(std::max(combo.size(), combos[r].size()));
            for (size_t j = 0; j < combos[r].size(); ++j)
                combo[j] = combo[j] - f * combos[r][j];
        }
        long piv = -1;
        for (long j = 0; j < D; ++j)
            if (!v[j].is_zero()) {
                piv = j;
                break;
            }
        if (piv < 0) {
            // dependency: combo gives the minimal polynomial
            Rational lead = combo.back();
            for (auto& c : combo) c = c / lead;
            return combo;
        }
        Rational f = v[piv];
        for (auto& x : v) x = x / f;
        for (auto& x : combo) x = x / f;
        rows.push_back(std::move(v));
        combos.push_back(std::move(combo));
        pivots.push_back(piv);
        pk = pk * a;
        if (k > D + 1) throw std::logic_error("min_poly: no dependency found");
    }
}

}  // namespace pizza
