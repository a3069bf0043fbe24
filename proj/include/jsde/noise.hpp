#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jsde/grid.hpp"
#include "jsde/levy.hpp"

namespace jsde {

struct BrownianPath {
    TimeGrid grid;
    std::vector<double> values;  // W at each knot, W(0) = 0
};

struct PoissonAtom {
    double s;  // 0 < s <= t_end
    double z;  // z_min <= |z| <= z_max
};

struct PoissonAtoms {
    std::vector<PoissonAtom> atoms;  // nondecreasing in s, draw order kept
    LevyMeasure measure;
    double t_end = 0;
};

// W increment N(0, dt) per base-grid step, from the "brownian" substream only.
BrownianPath sample_brownian(const TimeGrid& grid, std::uint64_t seed);

// Poisson point process with intensity ds lambda(dz) on (0, t_end] x window.
// Arrival gaps are Exp(mass), marks are inverse-CDF draws; streams
// "atoms/times" and "atoms/marks". Rejects infinite-mass windows.
PoissonAtoms sample_poisson_atoms(const LevyMeasure& measure, double t_end,
                                  std::uint64_t seed);

// One frozen draw of the driving pair. Immutable after construction; many
// solvers may read it concurrently. The merged view holds base knots plus
// atom times, with Brownian values at atom times filled in by bridge
// conditioning (stream "bridge") so the base-grid path stays untouched by
// any change to the jump window.
class NoiseRealization {
  public:
    NoiseRealization(const TimeGrid& grid, const LevyMeasure& measure,
                     std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }
    const BrownianPath& brownian() const { return base_; }
    const PoissonAtoms& atoms() const { return atoms_; }

    // merged grid: base knots and atom times, strictly increasing
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& w() const { return w_; }

    struct AtomEvent {
        std::size_t knot;  // index into times()
        double z;
    };
    // in time order; simultaneous atoms keep draw order
    const std::vector<AtomEvent>& events() const { return events_; }

    double t_end() const { return base_.grid.t_end(); }

    std::string serialize() const;
    static NoiseRealization parse(const std::string& text);

  private:
    NoiseRealization() : base_{TimeGrid(0, 1), {0.0}}, atoms_{{}, LevyMeasure::empty(), 0} {}
    void build_merged(const std::vector<double>& atom_w);

    std::uint64_t seed_ = 0;
    BrownianPath base_;
    PoissonAtoms atoms_;
    std::vector<double> times_;
    std::vector<double> w_;
    std::vector<AtomEvent> events_;
};

// Characteristic-function diagnostic for the compensated jump integral
// Z_t = sum of marks - t * int z lambda(dz) over the truncated window.
struct StableIncrementDiagnostic {
    std::vector<double> frequencies;
    std::vector<std::complex<double>> empirical;    // mean of exp(i theta Z_t)
    std::vector<std::complex<double>> theoretical;  // exp(t * truncated exponent)
    double max_abs_deviation = 0;
    double compensator_mean = 0;  // int z lambda(dz) over the window
    double horizon = 0;
    std::size_t n_paths = 0;
};

// Truncated Levy-Khintchine exponent int (e^{i theta z} - 1 - i theta z) lambda(dz)
// over the measure's window, by quadrature.
std::complex<double> truncated_exponent(const LevyMeasure& measure, double theta);

StableIncrementDiagnostic stable_increment_check(
    std::span<const PoissonAtoms> paths, const LevyMeasure& measure, double t,
    std::span<const double> frequencies);

StableIncrementDiagnostic stable_increment_check(const PoissonAtoms& atoms,
                                                 const LevyMeasure& measure,
                                                 double t);

}  // namespace jsde
