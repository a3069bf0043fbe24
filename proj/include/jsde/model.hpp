#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jsde/levy.hpp"

namespace jsde {

// sign with sign(0) = -1; ties at a level are classified "below"
inline double sgn(double x) { return x > 0 ? 1.0 : -1.0; }

// Coefficient triple of dX = sigma(X) dW + b(X) dt + F(X-,z) d(mu - nu).
// big_f must vanish outside z_support; compensator, when present, is the
// closed form of int F(x,z) lambda(dz) over the measure window.
struct SdeSpec {
    std::string label;
    std::function<double(double)> sigma;
    std::function<double(double)> b;
    std::function<double(double, double)> big_f;  // (state, mark)
    LevyMeasure measure = LevyMeasure::empty();
    double z_support_lo = 0;
    double z_support_hi = 0;
    std::function<double(double)> compensator;  // optional analytic route
};

void validate_spec(const SdeSpec& spec);

// Nondecreasing modulus with h(0) = 0, h > 0 on (0, eps0].
struct ModulusH {
    std::function<double(double)> h;
    double eps0 = 1.0;
};

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);

struct Witness {
    std::vector<double> point;  // the offending sample (x), (x,y) or (x1,x2,z)
    double value = 0;           // quotient / ratio / defect at the witness
    std::string note;
};

// Verdicts are statements about the sampled set, never proofs; fail always
// carries a concrete witness.
struct ConditionReport {
    std::string condition;
    Verdict verdict = Verdict::inconclusive;
    double estimate = 0;  // best constant / extreme statistic observed
    std::optional<Witness> witness;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    std::string detail;
    std::vector<double> series;  // optional per-level / per-n diagnostic
};

struct Interval {
    double lo = 0;
    double hi = 0;
};

struct CheckOptions {
    std::uint64_t seed = 1;
    double ceiling = 1e4;       // difference-quotient ceiling for Lipschitz checks
    double growth_ceiling = 10; // ratio ceiling for the linear-growth check
    double quad_rel_tol = 1e-6;
};

ConditionReport check_lipschitz_b(const SdeSpec& spec, Interval state_box,
                                  std::size_t n_samples, const CheckOptions& opts = {});

ConditionReport check_linear_growth(const SdeSpec& spec, Interval state_box,
                                    std::size_t n_samples, const CheckOptions& opts = {});

// Numerical divergence test of int_0+ du / h(u)^2 on a geometric ladder
// delta_k = eps * 4^-k. Documented cutoffs: pass when the partial integral
// exceeds 1e3 or the per-level increments stay >= 1e-2 without decaying over
// the last 10 levels; fail when three consecutive increments drop below
// 1e-6; inconclusive otherwise.
ConditionReport check_osgood(const ModulusH& h, double eps, int refinement_levels = 60);

ConditionReport check_monotone_jump_map(const SdeSpec& spec, Interval neighborhood,
                                        std::size_t z_samples, const CheckOptions& opts = {});

ConditionReport check_F_L1_lipschitz(const SdeSpec& spec, Interval state_box,
                                     std::size_t n_samples, const CheckOptions& opts = {});

ConditionReport check_combined_modulus(const SdeSpec& spec, const ModulusH& h,
                                       Interval state_box, std::size_t n_samples,
                                       const CheckOptions& opts = {});

// --- built-in models ------------------------------------------------------

SdeSpec make_gbm(double mu, double sigma);
SdeSpec make_constant_jump(double c, const LevyMeasure& measure);
SdeSpec make_constant_jump(double c);  // default window: lebesgue on [-1, 1]
SdeSpec make_tanaka_sign();
// companion coefficient +1 at 0: with the same noise its solution is the
// mirror image of the tanaka_sign one (negative control for slanted tests)
SdeSpec make_tanaka_sign_mirror();
SdeSpec make_spectrally_positive(std::function<double(double)> g, const std::string& g_label,
                                 double alpha, double z_min, double z_max);
// jump amplitude |z|^(-1-alpha(x)) against a Lebesgue window; alpha must be
// increasing and valued in (0,2) on the probe mesh (checked at construction)
SdeSpec make_stable_like(std::function<double(double)> alpha_fn, const std::string& alpha_label,
                         double z_min, double z_max);

// String-keyed factory used by the CLI config schema. Throws Error naming
// the label when it is unknown. The measure argument, when present,
// overrides the label's default window where the model allows it.
SdeSpec builtin(const std::string& label, const std::map<std::string, double>& params = {},
                const std::optional<LevyMeasure>& measure = std::nullopt,
                const std::string& g_kind = "one");

struct BuiltinInfo {
    std::string label;
    std::string description;
    std::string params;
};
std::vector<BuiltinInfo> builtin_models();

}  // namespace jsde
