#include "jsde/quadrature.hpp"

#include <cmath>

namespace jsde {

namespace {

struct SimpsonState {
    const std::function<double(double)>& f;
    double rel_tol;
    double abs_tol;
    double scale;  // |whole-interval estimate|, for the relative criterion
    bool converged = true;

    double recurse(double a, double m, double b, double fa, double fm, double fb,
                   double whole, int depth) {
        double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        double flm = f(lm), frm = f(rm);
        double h = b - a;
        double left = h / 12.0 * (fa + 4.0 * flm + fm);
        double right = h / 12.0 * (fm + 4.0 * frm + fb);
        double delta = left + right - whole;
        if (std::abs(delta) <= 15.0 * std::max(abs_tol, rel_tol * scale) || depth <= 0) {
            if (depth <= 0 && std::abs(delta) > 15.0 * std::max(abs_tol, rel_tol * scale))
                converged = false;
            return left + right + delta / 15.0;
        }
        return recurse(a, lm, m, fa, flm, fm, left, depth - 1) +
               recurse(m, rm, b, fm, frm, fb, right, depth - 1);
    }
};

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b,
                                  double rel_tol, double abs_tol, int max_depth) {
    QuadratureResult out;
    if (a == b) return out;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb)) {
        out.converged = false;
        return out;
    }
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    SimpsonState st{f, rel_tol, abs_tol, std::abs(whole), true};
    if (st.scale == 0) st.scale = 1.0;
    out.value = st.recurse(a, m, b, fa, fm, fb, whole, max_depth);
    out.converged = st.converged && std::isfinite(out.value);
    out.error_estimate = std::max(abs_tol, rel_tol * st.scale);
    return out;
}

}  // namespace jsde
