#ifndef PIZZA_VERIFY_HPP
#define PIZZA_VERIFY_HPP

#include "pizza/pizza.hpp"

namespace pizza {

struct CheckResult {
    std::string name;
    bool pass = true;
    bool applicable = true;  // counted towards the exit status
    std::string details;
};

struct VerifyReport {
    std::string function;
    bool analytic = true;
    std::vector<CheckResult> checks;
    bool all_pass = true;  // over applicable checks
    std::string status;    // "ok" | "violations" | "subanalytic: theorems not guaranteed"
};

// run the continuity, positive-slope, genericity-witness and
// multiplicity-width checks on one function expression
VerifyReport run_verify(const FuncExpr& f, const std::string& label);

}  // namespace pizza

#endif
