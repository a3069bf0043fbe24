#include "jsde/levy.hpp"

#include <cmath>
#include <limits>

#include "jsde/common.hpp"

namespace jsde {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// effective far cutoff for quadrature on an untruncated upper tail,
// expressed as a multiple of z_min
constexpr double kTailSpan = 1e12;
}  // namespace

std::string to_string(LevyKind kind) {
    switch (kind) {
        case LevyKind::lebesgue_on_interval: return "lebesgue_on_interval";
        case LevyKind::stable_symmetric: return "stable_symmetric";
        case LevyKind::stable_positive: return "stable_positive";
    }
    return "?";
}

LevyKind parse_levy_kind(std::string_view name) {
    if (name == "lebesgue_on_interval") return LevyKind::lebesgue_on_interval;
    if (name == "stable_symmetric") return LevyKind::stable_symmetric;
    if (name == "stable_positive") return LevyKind::stable_positive;
    throw Error("unknown measure kind '" + std::string(name) + "'");
}

LevyMeasure::LevyMeasure(LevyKind kind, double z_min, double z_max, double alpha)
    : kind_(kind), z_min_(z_min), z_max_(z_max), alpha_(alpha) {
    if (!(z_min >= 0)) throw Error("LevyMeasure: z_min must be >= 0");
    if (!(z_max >= z_min)) throw Error("LevyMeasure: need z_min <= z_max");
    if (kind == LevyKind::lebesgue_on_interval) {
        if (!std::isfinite(z_max)) throw Error("LevyMeasure: lebesgue window needs finite z_max");
    } else {
        if (!(alpha > 0 && alpha < 2)) throw Error("LevyMeasure: alpha must be in (0,2)");
        if (kind == LevyKind::stable_positive && !(alpha > 1))
            throw Error("LevyMeasure: stable_positive needs alpha in (1,2)");
        if (!std::isfinite(z_max) && !(alpha > 1))
            throw Error("LevyMeasure: untruncated upper tail needs alpha > 1");
    }
}

LevyMeasure LevyMeasure::lebesgue(double z_min, double z_max) {
    return LevyMeasure(LevyKind::lebesgue_on_interval, z_min, z_max, 0.0);
}

LevyMeasure LevyMeasure::stable_symmetric(double alpha, double z_min, double z_max) {
    return LevyMeasure(LevyKind::stable_symmetric, z_min, z_max, alpha);
}

LevyMeasure LevyMeasure::stable_positive(double alpha, double z_min, double z_max) {
    return LevyMeasure(LevyKind::stable_positive, z_min, z_max, alpha);
}

LevyMeasure LevyMeasure::empty() {
    return LevyMeasure(LevyKind::lebesgue_on_interval, 1.0, 1.0, 0.0);
}

double LevyMeasure::mass() const {
    if (is_empty()) return 0.0;
    switch (kind_) {
        case LevyKind::lebesgue_on_interval:
            return 2.0 * (z_max_ - z_min_);
        case LevyKind::stable_symmetric:
        case LevyKind::stable_positive: {
            if (z_min_ == 0) return kInf;
            double upper = std::isfinite(z_max_) ? std::pow(z_max_, -alpha_) : 0.0;
            double one_side = (std::pow(z_min_, -alpha_) - upper) / alpha_;
            return two_sided() ? 2.0 * one_side : one_side;
        }
    }
    return 0.0;
}

double LevyMeasure::mean_mark() const {
    if (is_empty() || two_sided()) return 0.0;
    // int z^(1-alpha-1) dz on [z_min, z_max], alpha in (1,2)
    double upper = std::isfinite(z_max_) ? std::pow(z_max_, 1.0 - alpha_) : 0.0;
    return (std::pow(z_min_, 1.0 - alpha_) - upper) / (alpha_ - 1.0);
}

double LevyMeasure::density(double z) const {
    double az = std::abs(z);
    if (az < z_min_ || az > z_max_) return 0.0;
    if (kind_ == LevyKind::lebesgue_on_interval) return 1.0;
    if (kind_ == LevyKind::stable_positive && z < 0) return 0.0;
    return std::pow(az, -alpha_ - 1.0);
}

double LevyMeasure::mark_quantile(double u) const {
    if (is_empty()) throw Error("LevyMeasure: quantile of empty window");
    if (kind_ == LevyKind::lebesgue_on_interval) {
        double len = z_max_ - z_min_;
        double v = u * 2.0 * len;
        return v < len ? -z_max_ + v : z_min_ + (v - len);
    }
    if (z_min_ == 0) throw Error("LevyMeasure: infinite mass, cannot sample marks");
    double sign = 1.0, v = u;
    if (two_sided()) {
        sign = u < 0.5 ? -1.0 : 1.0;
        v = u < 0.5 ? 2.0 * u : 2.0 * u - 1.0;
        v = std::min(std::max(v, 0x1p-53), 1.0 - 0x1p-53);
    }
    // truncated Pareto inverse CDF
    double lo = std::pow(z_min_, -alpha_);
    double hi = std::isfinite(z_max_) ? std::pow(z_max_, -alpha_) : 0.0;
    return sign * std::pow(lo - v * (lo - hi), -1.0 / alpha_);
}

QuadratureResult LevyMeasure::integrate(const std::function<double(double)>& g,
                                        double rel_tol) const {
    if (is_empty()) return QuadratureResult{};
    if (kind_ == LevyKind::lebesgue_on_interval) {
        auto both = [&](double z) { return g(z) + g(-z); };
        return adaptive_simpson(both, z_min_, z_max_, rel_tol);
    }
    if (z_min_ == 0) {
        QuadratureResult r;
        r.converged = false;
        return r;
    }
    // log substitution z = exp(v): int g(z) z^(-alpha-1) dz = int g(e^v) e^(-alpha v) dv
    double v_max = std::isfinite(z_max_) ? std::log(z_max_) : std::log(z_min_ * kTailSpan);
    auto integrand = [&](double v) {
        double z = std::exp(v);
        double w = std::exp(-alpha_ * v);
        double val = g(z);
        if (two_sided()) val += g(-z);
        return val * w;
    };
    return adaptive_simpson(integrand, std::log(z_min_), v_max, rel_tol);
}

}  // namespace jsde
