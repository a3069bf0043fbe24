#pragma once

#include <functional>

namespace jsde {

struct QuadratureResult {
    double value = 0;
    bool converged = true;
    double error_estimate = 0;
};

// Adaptive Simpson on [a, b]. rel_tol is applied against the running whole
// integral, abs_tol against each panel. Returns converged=false when the
// recursion depth budget is exhausted before the tolerance is met.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b,
                                  double rel_tol = 1e-6,
                                  double abs_tol = 1e-12,
                                  int max_depth = 48);

}  // namespace jsde
