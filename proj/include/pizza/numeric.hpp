#ifndef PIZZA_NUMERIC_HPP
#define PIZZA_NUMERIC_HPP

#include "pizza/arc.hpp"

namespace pizza {

// geometric sampling plan for the floating-point order estimator
struct SamplingPlan {
    double t_min = 1e-4;
    double t_max = 1e-2;
    int samples = 64;

    bool valid() const { return 0 < t_min && t_min < t_max && t_max <= 0.1 && samples >= 16; }
};

struct OrdEstimate {
    double estimate = 0.0;
    double residual = 0.0;   // max absolute deviation of the log-log fit
    bool underflow = false;  // |f| below machine tiny on most samples
    bool refused = false;    // exact order outside the double-precision trust range
    std::string note;
};

// least-squares slope of log|f(a(t))| against log t, with t the distance-like
// parameter reconstructed from the chart coordinate and the norm correction.
// Cross-validates the exact engine; orders above ~14 are refused.
OrdEstimate estimate_ord(const FuncExpr& f, const Arc& a, const SamplingPlan& plan = {});

}  // namespace pizza

#endif
