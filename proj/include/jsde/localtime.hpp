#pragma once

#include <functional>
#include <span>
#include <vector>

#include "jsde/model.hpp"
#include "jsde/solver.hpp"

namespace jsde {

// Running discrete quadratic variation: total = sum of squared consecutive
// knot increments, jump_part = sum of squared jump sizes, cont_part =
// max(total - jump_part, 0) at each knot.
struct QvSeries {
    std::vector<double> t;
    std::vector<double> total;
    std::vector<double> jump_part;
    std::vector<double> cont_part;

    double final_total() const { return total.back(); }
    double final_cont() const { return cont_part.back(); }
};

QvSeries quadratic_variation(const JumpPath& path);

// |X_t - a| - |X_0 - a| - int sign(X_- - a) dX - jump correction sum.
// value = term_final_abs - term_initial_abs - term_sign_integral -
// term_jump_correction holds exactly; the slanted variant zeroes the last
// term. The sign integral evaluates sign at left knot values for the
// continuous sub-increments and at the exact left limit for jumps.
struct LocalTimeEstimate {
    double level = 0;
    double horizon = 0;
    double value = 0;
    double term_final_abs = 0;
    double term_initial_abs = 0;
    double term_sign_integral = 0;
    double term_jump_correction = 0;
    bool slanted = false;
};

LocalTimeEstimate tanaka_local_time(const JumpPath& path, double a);
LocalTimeEstimate slanted_local_time(const JumpPath& path, double a);

// Both sides of int L_t^a f(a) da = int_0^t f(X_-) d[X]^c: left by
// trapezoid over the level grid, right by summing f at left knots against
// the exact continuous sub-increments squared.
struct OccupationCheck {
    double lhs = 0;
    double rhs = 0;
    double relative_gap = 0;
    double horizon = 0;
    std::size_t n_levels = 0;
};

OccupationCheck occupation_identity_check(const JumpPath& path,
                                          const std::function<double(double)>& f,
                                          std::span<const double> level_grid);

// Mollifier pair phi_n for |z|: breakpoints a_n < a_{n-1} with
// int_{a_n}^{a_{n-1}} du/h^2 = n, bump psi_n <= 2/(n h^2) supported on
// (a_n, a_{n-1}) with unit mass (normalized 1/h^2 profile, linear tapers),
// phi_n(x) = int_0^{|x|} int_0^y psi_n. Then 0 <= phi_n <= |z|,
// |z| - phi_n(z) <= a_{n-1}, |phi_n'| <= 1 and phi_n'' = psi_n >= 0.
class PhiSequence {
  public:
    int n() const { return n_; }
    double a_lower() const { return a_lo_; }   // a_n
    double a_upper() const { return a_hi_; }   // a_{n-1}
    double eps0() const { return eps0_; }

    double phi(double x) const;
    double dphi(double x) const;   // odd; sign convention sgn at 0
    double ddphi(double x) const;  // psi_n(|x|)

  private:
    friend PhiSequence build_phi(const ModulusH& h, int n);

    int n_ = 0;
    double a_lo_ = 0, a_hi_ = 0, eps0_ = 0;
    std::vector<double> mesh_;     // geometric mesh on [a_lo, a_hi]
    std::vector<double> psi_;      // normalized bump on the mesh
    std::vector<double> cdf_;      // int_{a_lo}^{u} psi
    std::vector<double> phi_mid_;  // int_{a_lo}^{u} cdf
    double phi_at_hi_ = 0;
};

// Requires the Osgood divergence (check_osgood should have passed); throws
// when the breakpoint equation cannot be bracketed or h is numerically flat.
PhiSequence build_phi(const ModulusH& h, int n);

// Integral of phi_n(x-y+dF) - phi_n(x-y) - phi_n'(x-y) dF against lambda for
// each n and sampled pair; pass when the per-n maxima shrink below
// rel_tol * (first maximum) + abs_tol without growing along the way.
struct Prop4dOptions {
    double rel_tol = 0.25;
    double abs_tol = 1e-9;
    double quad_rel_tol = 1e-8;
};

ConditionReport check_prop4_condition_d(const SdeSpec& spec,
                                        std::span<const PhiSequence> phis,
                                        std::span<const std::pair<double, double>> state_pairs,
                                        const Prop4dOptions& opts = {});

}  // namespace jsde
