#include "pizza/poly.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <climits>
#include <sstream>

namespace pizza {

// ---------------------------------------------------------------------------
// BivarPoly
// ---------------------------------------------------------------------------

BivarPoly BivarPoly::monomial(int i, int j, FieldElement c) {
    BivarPoly p;
    p.insert(i, j, std::move(c));
    return p;
}

void BivarPoly::insert(int i, int j, FieldElement c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(i, j);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, std::move(c));
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

FieldElement BivarPoly::at(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? FieldElement(0) : it->second;
}

BivarPoly operator+(const BivarPoly& a, const BivarPoly& b) {
    BivarPoly r = a;
    for (const auto& [e, c] : b.terms_) r.insert(e.first, e.second, c);
    return r;
}

BivarPoly BivarPoly::operator-() const {
    BivarPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

BivarPoly operator-(const BivarPoly& a, const BivarPoly& b) { return a + (-b); }

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
    BivarPoly r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            r.insert(ea.first + eb.first, ea.second + eb.second, ca * cb);
    return r;
}

BivarPoly BivarPoly::scaled(const FieldElement& s) const {
    BivarPoly r;
    for (const auto& [e, c] : terms_) r.insert(e.first, e.second, c * s);
    return r;
}

BivarPoly BivarPoly::pow(int e) const {
    BivarPoly r = constant(FieldElement(1));
    for (int k = 0; k < e; ++k) r = r * *this;
    return r;
}

bool operator==(const BivarPoly& a, const BivarPoly& b) { return (a - b).is_zero(); }

int BivarPoly::deg_x() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first);
    return d;
}
int BivarPoly::deg_y() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.second);
    return d;
}
int BivarPoly::multiplicity() const {
    int m = INT_MAX;
    for (const auto& [e, c] : terms_) m = std::min(m, e.first + e.second);
    return m;
}
BivarPoly BivarPoly::lowest_form() const {
    int m = multiplicity();
    BivarPoly r;
    for (const auto& [e, c] : terms_)
        if (e.first + e.second == m) r.insert(e.first, e.second, c);
    return r;
}
int BivarPoly::x_mult() const {
    int m = INT_MAX;
    for (const auto& [e, c] : terms_) m = std::min(m, e.first);
    return m;
}
int BivarPoly::y_mult() const {
    int m = INT_MAX;
    for (const auto& [e, c] : terms_) m = std::min(m, e.second);
    return m;
}
BivarPoly BivarPoly::div_xpow(int a) const {
    BivarPoly r;
    for (const auto& [e, c] : terms_) r.insert(e.first - a, e.second, c);
    return r;
}
BivarPoly BivarPoly::div_ypow(int b) const {
    BivarPoly r;
    for (const auto& [e, c] : terms_) r.insert(e.first, e.second - b, c);
    return r;
}
BivarPoly BivarPoly::with_x_negated() const {
    BivarPoly r;
    for (const auto& [e, c] : terms_) r.insert(e.first, e.second, (e.first % 2) ? -c : c);
    return r;
}
BivarPoly BivarPoly::with_y_negated() const {
    BivarPoly r;
    for (const auto& [e, c] : terms_) r.insert(e.first, e.second, (e.second % 2) ? -c : c);
    return r;
}
BivarPoly BivarPoly::swapped() const {
    BivarPoly r;
    for (const auto& [e, c] : terms_) r.insert(e.second, e.first, c);
    return r;
}
BivarPoly BivarPoly::d_dy() const {
    BivarPoly r;
    for (const auto& [e, c] : terms_)
        if (e.second > 0) r.insert(e.first, e.second - 1, c * FieldElement(long(e.second)));
    return r;
}
BivarPoly BivarPoly::d_dx() const {
    BivarPoly r;
    for (const auto& [e, c] : terms_)
        if (e.first > 0) r.insert(e.first - 1, e.second, c * FieldElement(long(e.first)));
    return r;
}

FieldElement BivarPoly::eval(const FieldElement& x, const FieldElement& y) const {
    FieldElement r(0);
    for (const auto& [e, c] : terms_) r = r + c * x.pow(e.first) * y.pow(e.second);
    return r;
}

double BivarPoly::eval_double(double x, double y) const {
    // Neumaier compensated summation
    double sum = 0.0, comp = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c.to_double();
        for (int k = 0; k < e.first; ++k) t *= x;
        for (int k = 0; k < e.second; ++k) t *= y;
        double s = sum + t;
        if (std::abs(sum) >= std::abs(t))
            comp += (sum - s) + t;
        else
            comp += (t - s) + sum;
        sum = s;
    }
    return sum + comp;
}

namespace {
std::string render_coeff_monomial(const Rational& c, int i, int j, bool leading) {
    std::ostringstream os;
    Rational a = abs(c);
    bool neg = c.sign() < 0;
    if (leading) {
        if (neg) os << "-";
    } else {
        os << (neg ? " - " : " + ");
    }
    std::string mono;
    if (i > 0) mono += (i == 1) ? "x" : ("x^" + std::to_string(i));
    if (j > 0) {
        if (!mono.empty()) mono += "*";
        mono += (j == 1) ? "y" : ("y^" + std::to_string(j));
    }
    if (mono.empty()) {
        os << a.str();
    } else if (a.is_one()) {
        os << mono;
    } else {
        os << a.str() << "*" << mono;
    }
    return os.str();
}
}  // namespace

std::string BivarPoly::render() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool leading = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        auto q = it->second.as_rational();
        if (!q) throw std::logic_error("BivarPoly::render: non-rational coefficient");
        os << render_coeff_monomial(*q, it->first.first, it->first.second, leading);
        leading = false;
    }
    return os.str();
}

std::pair<BivarPoly, Rational> quasi_homogeneous_part(const BivarPoly& f, const Rational& w) {
    if (f.is_zero()) throw std::invalid_argument("quasi_homogeneous_part: zero polynomial");
    bool first = true;
    Rational v;
    for (const auto& [e, c] : f.terms()) {
        Rational wd = Rational(e.first) + w * Rational(e.second);
        if (first || wd < v) {
            v = wd;
            first = false;
        }
    }
    BivarPoly f0;
    for (const auto& [e, c] : f.terms()) {
        Rational wd = Rational(e.first) + w * Rational(e.second);
        if (wd == v) f0 = f0 + BivarPoly::monomial(e.first, e.second, c);
    }
    return {f0, v};
}

// ---------------------------------------------------------------------------
// FuncExpr
// ---------------------------------------------------------------------------

FuncExpr FuncExpr::make_leaf(BivarPoly p) {
    FuncExpr e;
    e.kind_ = Kind::leaf;
    e.poly_ = std::make_shared<const BivarPoly>(std::move(p));
    return e;
}

FuncExpr FuncExpr::make_pair(Kind k, FuncExpr a, FuncExpr b) {
    FuncExpr e;
    e.kind_ = k;
    e.a_ = std::make_shared<const FuncExpr>(std::move(a));
    e.b_ = std::make_shared<const FuncExpr>(std::move(b));
    return e;
}

std::vector<const BivarPoly*> FuncExpr::leaves() const {
    std::vector<const BivarPoly*> out;
    if (is_leaf()) {
        out.push_back(poly_.get());
        return out;
    }
    for (const BivarPoly* p : a_->leaves()) out.push_back(p);
    for (const BivarPoly* p : b_->leaves()) out.push_back(p);
    return out;
}

bool operator==(const FuncExpr& a, const FuncExpr& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.is_leaf()) return *a.poly_ == *b.poly_;
    return *a.a_ == *b.a_ && *a.b_ == *b.b_;
}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;

    explicit Lexer(const std::string& str) : s(str) {}

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
    void expect(char c, const char* what) {
        if (!eat(c)) throw ParseError(pos, std::string("expected '") + c + "' " + what);
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
        return s.substr(start, pos - start);
    }
    bool at_ident() {
        return std::isalpha(static_cast<unsigned char>(peek()));
    }
    bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())); }
    BigInt number() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw ParseError(pos, "expected a number");
        return BigInt(s.substr(start, pos - start));
    }
};

BivarPoly p_poly(Lexer& lx);

BivarPoly p_primary(Lexer& lx) {
    if (lx.eat('(')) {
        BivarPoly p = p_poly(lx);
        lx.expect(')', "to close parenthesis");
        return p;
    }
    if (lx.at_ident()) {
        size_t here = lx.pos;
        std::string id = lx.ident();
        if (id == "x") return BivarPoly::var_x();
        if (id == "y") return BivarPoly::var_y();
        throw ParseError(here, "unexpected identifier '" + id + "' in polynomial");
    }
    if (lx.at_digit()) {
        BigInt n = lx.number();
        if (lx.eat('/')) {
            BigInt d = lx.number();
            if (d.is_zero()) throw ParseError(lx.pos, "zero denominator");
            return BivarPoly::constant(FieldElement(Rational(n, d)));
        }
        return BivarPoly::constant(FieldElement(Rational(n)));
    }
    throw ParseError(lx.pos, "expected x, y, a number, or '('");
}

BivarPoly p_factor(Lexer& lx) {
    BivarPoly base = p_primary(lx);
    if (lx.eat('^')) {
        BigInt e = lx.number();
        if (e.sign() < 0 || e > BigInt(512)) throw ParseError(lx.pos, "exponent out of range");
        return base.pow(int(e.to_long()));
    }
    return base;
}

BivarPoly p_term(Lexer& lx) {
    BivarPoly p = p_factor(lx);
    while (lx.eat('*')) p = p * p_factor(lx);
    return p;
}

BivarPoly p_poly(Lexer& lx) {
    bool neg = false;
    if (lx.eat('-'))
        neg = true;
    else
        lx.eat('+');
    BivarPoly p = p_term(lx);
    if (neg) p = -p;
    while (true) {
        if (lx.eat('+')) {
            p = p + p_term(lx);
        } else if (lx.eat('-')) {
            p = p - p_term(lx);
        } else {
            break;
        }
    }
    return p;
}

FuncExpr p_expr(Lexer& lx) {
    if (lx.at_ident()) {
        size_t here = lx.pos;
        std::string id = lx.ident();
        if (id == "min" || id == "max") {
            lx.expect('(', "after min/max");
            FuncExpr a = p_expr(lx);
            lx.expect(',', "between min/max arguments");
            FuncExpr b = p_expr(lx);
            lx.expect(')', "to close min/max");
            return FuncExpr::make_pair(
                id == "min" ? FuncExpr::Kind::min_node : FuncExpr::Kind::max_node, std::move(a),
                std::move(b));
        }
        lx.pos = here;  // x or y: fall through to polynomial parsing
    }
    Lexer saved = lx;
    BivarPoly p = p_poly(lx);
    if (p.is_zero()) throw ParseError(saved.pos, "identically-zero leaf is not a germ input");
    if (!p.at(0, 0).is_zero()) throw ParseError(saved.pos, "germ violation: f(0,0) != 0");
    return FuncExpr::make_leaf(std::move(p));
}

}  // namespace

FuncExpr parse_expr(const std::string& text) {
    Lexer lx(text);
    FuncExpr e = p_expr(lx);
    lx.skip_ws();
    if (lx.pos != text.size()) throw ParseError(lx.pos, "trailing input");
    return e;
}

std::string render_expr(const FuncExpr& e) {
    switch (e.kind()) {
        case FuncExpr::Kind::leaf:
            return e.leaf().render();
        case FuncExpr::Kind::min_node:
            return "min(" + render_expr(e.left()) + ", " + render_expr(e.right()) + ")";
        case FuncExpr::Kind::max_node:
            return "max(" + render_expr(e.left()) + ", " + render_expr(e.right()) + ")";
    }
    return "";
}

// ---------------------------------------------------------------------------
// square-free decomposition in y over Q(x)
// ---------------------------------------------------------------------------

namespace {

// dense univariate polynomial over Q (in x)
struct QXPoly {
    std::vector<Rational> c;  // ascending, trimmed

    QXPoly() = default;
    explicit QXPoly(std::vector<Rational> cc) : c(std::move(cc)) { trim(); }
    static QXPoly constant(Rational r) { return QXPoly({std::move(r)}); }
    static QXPoly one() { return constant(Rational(1)); }
    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return int(c.size()) - 1; }
    const Rational& lc() const { return c.back(); }

    friend QXPoly operator+(const QXPoly& a, const QXPoly& b) {
        std::vector<Rational> r = a.c;
        if (r.size() < b.c.size()) r.resize(b.c.size());
        for (size_t i = 0; i < b.c.size(); ++i) r[i] = r[i] + b.c[i];
        return QXPoly(std::move(r));
    }
    QXPoly operator-() const {
        QXPoly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend QXPoly operator-(const QXPoly& a, const QXPoly& b) { return a + (-b); }
    friend QXPoly operator*(const QXPoly& a, const QXPoly& b) {
        if (a.is_zero() || b.is_zero()) return QXPoly();
        std::vector<Rational> r(a.c.size() + b.c.size() - 1);
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] = r[i + j] + a.c[i] * b.c[j];
        return QXPoly(std::move(r));
    }
    QXPoly scaled(const Rational& s) const {
        QXPoly r = *this;
        for (auto& x : r.c) x = x * s;
        r.trim();
        return r;
    }
    static std::pair<QXPoly, QXPoly> divmod(const QXPoly& a, const QXPoly& b) {
        if (b.is_zero()) throw std::domain_error("QXPoly: division by zero");
        QXPoly r = a;
        int db = b.degree();
        if (r.degree() < db) return {QXPoly(), r};
        std::vector<Rational> q(r.degree() - db + 1);
        while (!r.is_zero() && r.degree() >= db) {
            int k = r.degree() - db;
            Rational f = r.lc() / b.lc();
            q[k] = f;
            for (int i = 0; i <= db; ++i) r.c[k + i] = r.c[k + i] - f * b.c[i];
            r.trim();
        }
        return {QXPoly(std::move(q)), std::move(r)};
    }
    static QXPoly div_exact(const QXPoly& a, const QXPoly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw std::logic_error("QXPoly: inexact division");
        return std::move(q);
    }
    QXPoly derivative() const {
        if (c.size() <= 1) return QXPoly();
        std::vector<Rational> r(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * Rational(long(i));
        return QXPoly(std::move(r));
    }
    QXPoly monic() const { return is_zero() ? *this : scaled(lc().inverse()); }
};

QXPoly qx_gcd(QXPoly a, QXPoly b) {
    while (!b.is_zero()) {
        QXPoly r = QXPoly::divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// rational function in x, normalized (monic denominator, reduced)
struct RatX {
    QXPoly num, den;

    RatX() : den(QXPoly::one()) {}
    RatX(QXPoly n, QXPoly d) : num(std::move(n)), den(std::move(d)) { normalize(); }
    static RatX from_poly(QXPoly p) { return RatX(std::move(p), QXPoly::one()); }
    void normalize() {
        if (den.is_zero()) throw std::domain_error("RatX: zero denominator");
        if (num.is_zero()) {
            den = QXPoly::one();
            return;
        }
        QXPoly g = qx_gcd(num, den);
        if (g.degree() > 0) {
            num = QXPoly::div_exact(num, g);
            den = QXPoly::div_exact(den, g);
        }
        Rational l = den.lc();
        num = num.scaled(l.inverse());
        den = den.scaled(l.inverse());
    }
    bool is_zero() const { return num.is_zero(); }
    friend RatX operator+(const RatX& a, const RatX& b) {
        return RatX(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RatX operator-(const RatX& a, const RatX& b) {
        return RatX(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend RatX operator*(const RatX& a, const RatX& b) { return RatX(a.num * b.num, a.den * b.den); }
    friend RatX operator/(const RatX& a, const RatX& b) {
        if (b.is_zero()) throw std::domain_error("RatX: division by zero");
        return RatX(a.num * b.den, a.den * b.num);
    }
    RatX operator-() const { return RatX(-num, den); }
};

// polynomial in y over Q(x)
struct RXPoly {
    std::vector<RatX> c;

    RXPoly() = default;
    explicit RXPoly(std::vector<RatX> cc) : c(std::move(cc)) { trim(); }
    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return int(c.size()) - 1; }
    const RatX& lc() const { return c.back(); }

    friend RXPoly operator+(const RXPoly& a, const RXPoly& b) {
        std::vector<RatX> r = a.c;
        if (r.size() < b.c.size()) r.resize(b.c.size());
        for (size_t i = 0; i < b.c.size(); ++i) r[i] = r[i] + b.c[i];
        return RXPoly(std::move(r));
    }
    RXPoly operator-() const {
        RXPoly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend RXPoly operator-(const RXPoly& a, const RXPoly& b) { return a + (-b); }
    friend RXPoly operator*(const RXPoly& a, const RXPoly& b) {
        if (a.is_zero() || b.is_zero()) return RXPoly();
        std::vector<RatX> r(a.c.size() + b.c.size() - 1);
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] = r[i + j] + a.c[i] * b.c[j];
        return RXPoly(std::move(r));
    }
    RXPoly scaled(const RatX& s) const {
        std::vector<RatX> r = c;
        for (auto& x : r) x = x * s;
        return RXPoly(std::move(r));
    }
    static std::pair<RXPoly, RXPoly> divmod(const RXPoly& a, const RXPoly& b) {
        if (b.is_zero()) throw std::domain_error("RXPoly: division by zero");
        RXPoly r = a;
        int db = b.degree();
        if (r.degree() < db) return {RXPoly(), r};
        std::vector<RatX> q(r.degree() - db + 1);
        while (!r.is_zero() && r.degree() >= db) {
            int k = r.degree() - db;
            RatX f = r.lc() / b.lc();
            q[k] = f;
            for (int i = 0; i <= db; ++i) r.c[k + i] = r.c[k + i] - f * b.c[i];
            r.trim();
        }
        return {RXPoly(std::move(q)), std::move(r)};
    }
    static RXPoly div_exact(const RXPoly& a, const RXPoly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw std::logic_error("RXPoly: inexact division");
        return std::move(q);
    }
    RXPoly derivative() const {
        if (c.size() <= 1) return RXPoly();
        std::vector<RatX> r(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i)
            r[i - 1] = c[i] * RatX::from_poly(QXPoly::constant(Rational(long(i))));
        return RXPoly(std::move(r));
    }
    RXPoly monic() const { return is_zero() ? *this : scaled(RatX::from_poly(QXPoly::one()) / lc()); }
};

RXPoly rx_gcd(RXPoly a, RXPoly b) {
    while (!b.is_zero()) {
        RXPoly r = RXPoly::divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::vector<std::pair<RXPoly, int>> rx_squarefree(const RXPoly& p) {
    std::vector<std::pair<RXPoly, int>> parts;
    if (p.degree() <= 0) return parts;
    RXPoly f = p.monic();
    RXPoly fp = f.derivative();
    RXPoly g = rx_gcd(f, fp);
    if (g.degree() == 0) {
        parts.push_back({f, 1});
        return parts;
    }
    RXPoly c = RXPoly::div_exact(f, g);
    RXPoly w = RXPoly::div_exact(fp, g) - c.derivative();
    int i = 1;
    while (c.degree() > 0) {
        RXPoly a = rx_gcd(c, w);
        if (a.degree() > 0) parts.push_back({a, i});
        c = RXPoly::div_exact(c, a);
        w = RXPoly::div_exact(w, a) - c.derivative();
        ++i;
    }
    return parts;
}

}  // namespace

std::vector<std::pair<BivarPoly, int>> y_squarefree_decomposition(const BivarPoly& f) {
    // convert to (Q(x))[y]
    int dy = f.deg_y(), dx = f.deg_x();
    std::vector<std::vector<Rational>> coef(dy + 1, std::vector<Rational>(dx + 1));
    for (const auto& [e, c] : f.terms()) {
        auto q = c.as_rational();
        if (!q) throw std::logic_error("y_squarefree_decomposition: non-rational coefficient");
        coef[e.second][e.first] = *q;
    }
    std::vector<RatX> rc(dy + 1);
    for (int j = 0; j <= dy; ++j) rc[j] = RatX::from_poly(QXPoly(coef[j]));
    RXPoly F(std::move(rc));

    std::vector<std::pair<BivarPoly, int>> out;
    for (auto& [part, mult] : rx_squarefree(F)) {
        // clear denominators, then remove the Q[x] content
        QXPoly L = QXPoly::one();
        for (const RatX& r : part.c)
            if (!r.is_zero()) L = QXPoly::div_exact(L * r.den, qx_gcd(L, r.den));
        std::vector<QXPoly> cleared(part.c.size());
        for (size_t j = 0; j < part.c.size(); ++j)
            if (!part.c[j].is_zero())
                cleared[j] = part.c[j].num * QXPoly::div_exact(L, part.c[j].den);
        QXPoly content;
        for (const QXPoly& q : cleared)
            if (!q.is_zero()) content = content.is_zero() ? q : qx_gcd(content, q);
        BivarPoly bp;
        for (size_t j = 0; j < cleared.size(); ++j) {
            if (cleared[j].is_zero()) continue;
            QXPoly prim = QXPoly::div_exact(cleared[j], content);
            for (size_t i = 0; i < prim.c.size(); ++i)
                if (!prim.c[i].is_zero())
                    bp = bp + BivarPoly::monomial(int(i), int(j), FieldElement(prim.c[i]));
        }
        // canonical sign: make the grlex-leading coefficient positive
        auto it = bp.terms().rbegin();
        if (it != bp.terms().rend() && it->second.sign() < 0) bp = -bp;
        out.push_back({std::move(bp), mult});
    }
    return out;
}

}  // namespace pizza
