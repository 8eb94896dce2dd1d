#include "pizza/numeric.hpp"

#include <cmath>

#include "pizza/poly.hpp"

namespace pizza {

namespace {

double eval_expr(const FuncExpr& f, double x, double y) {
    if (f.is_leaf()) return f.leaf().eval_double(x, y);
    double a = eval_expr(f.left(), x, y);
    double b = eval_expr(f.right(), x, y);
    return f.kind() == FuncExpr::Kind::min_node ? std::min(a, b) : std::max(a, b);
}

}  // namespace

OrdEstimate estimate_ord(const FuncExpr& f, const Arc& a, const SamplingPlan& plan) {
    OrdEstimate out;
    if (!plan.valid()) {
        out.refused = true;
        out.note = "invalid sampling plan";
        return out;
    }
    int n = plan.samples;
    std::vector<double> logs_t, logs_f;
    logs_t.reserve(n);
    logs_f.reserve(n);
    int tiny = 0;
    double ratio = std::pow(plan.t_max / plan.t_min, 1.0 / (n - 1));
    double u = plan.t_min;
    for (int i = 0; i < n; ++i, u *= ratio) {
        double g = a.g.eval_double(u);
        double x, y;
        if (a.chart == Chart::x_graph) {
            x = a.half * u;
            y = g;
        } else {
            x = g;
            y = a.half * u;
        }
        double t = std::hypot(x, y);  // distance-like parameter
        double v = std::fabs(eval_expr(f, x, y));
        if (v < 1e-290) {
            ++tiny;
            continue;
        }
        logs_t.push_back(std::log(t));
        logs_f.push_back(std::log(v));
    }
    if (tiny > n / 2) {
        out.underflow = true;
        out.note = "|f| underflows on most samples (order too high or arc in the zero set)";
        return out;
    }
    size_t m = logs_t.size();
    double st = 0, sf = 0;
    for (size_t i = 0; i < m; ++i) {
        st += logs_t[i];
        sf += logs_f[i];
    }
    double mt = st / double(m), mf = sf / double(m);
    double num = 0, den = 0;
    for (size_t i = 0; i < m; ++i) {
        num += (logs_t[i] - mt) * (logs_f[i] - mf);
        den += (logs_t[i] - mt) * (logs_t[i] - mt);
    }
    out.estimate = num / den;
    double maxdev = 0;
    double intercept = mf - out.estimate * mt;
    for (size_t i = 0; i < m; ++i) {
        double dev = std::fabs(logs_f[i] - (intercept + out.estimate * logs_t[i]));
        maxdev = std::max(maxdev, dev);
    }
    out.residual = maxdev;
    if (out.estimate > 14.5) {
        out.refused = true;
        out.note = "estimated order beyond the double-precision trust range (~14)";
    }
    return out;
}

}  // namespace pizza
