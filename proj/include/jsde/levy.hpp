#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "jsde/quadrature.hpp"

namespace jsde {

enum class LevyKind { lebesgue_on_interval, stable_symmetric, stable_positive };

std::string to_string(LevyKind kind);
LevyKind parse_levy_kind(std::string_view name);

// Jump-size intensity lambda(dz) restricted to the sampling window
// {z_min <= |z| <= z_max} (one-sided [z_min, z_max] for the spectrally
// positive kind). z_min = 0 is allowed only where the window mass stays
// finite (the Lebesgue kind); the stable kinds blow up at the origin and a
// zero truncation is rejected when atoms are requested. z_max may be
// infinite for the stable kinds with alpha > 1.
//
// z_min == z_max denotes the empty window (zero mass, no atoms); jump-free
// models use it so that no placeholder atoms enter the time grid.
class LevyMeasure {
  public:
    static LevyMeasure lebesgue(double z_min, double z_max);
    static LevyMeasure stable_symmetric(double alpha, double z_min, double z_max);
    static LevyMeasure stable_positive(double alpha, double z_min, double z_max);
    static LevyMeasure empty();

    LevyKind kind() const { return kind_; }
    double z_min() const { return z_min_; }
    double z_max() const { return z_max_; }
    double alpha() const { return alpha_; }

    bool is_stable() const { return kind_ != LevyKind::lebesgue_on_interval; }
    bool two_sided() const { return kind_ != LevyKind::stable_positive; }
    bool is_empty() const { return z_min_ == z_max_; }

    // total lambda-mass of the window; +inf when the truncation is absent
    double mass() const;

    // first moment of the window, closed form (0 by symmetry for the
    // two-sided kinds)
    double mean_mark() const;

    // lambda-density at z (0 outside the window)
    double density(double z) const;

    // inverse CDF of the normalized restriction; u in (0,1)
    double mark_quantile(double u) const;

    // integral of g against lambda over the window; adaptive quadrature with
    // relative tolerance rel_tol (the stable kinds integrate in log-z)
    QuadratureResult integrate(const std::function<double(double)>& g,
                               double rel_tol = 1e-6) const;

    bool operator==(const LevyMeasure& other) const = default;

  private:
    LevyMeasure(LevyKind kind, double z_min, double z_max, double alpha);

    LevyKind kind_;
    double z_min_;
    double z_max_;
    double alpha_;
};

}  // namespace jsde
