#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jsde/model.hpp"
#include "jsde/noise.hpp"

namespace jsde {

enum class CompensatorMode { analytic, quadrature };

struct SolveConfig {
    double base_step = 1e-3;    // step used when the caller builds the grid
    double explosion_guard = 1e6;
    CompensatorMode compensator_mode = CompensatorMode::analytic;
    double quad_rel_tol = 1e-6;
};

// Cadlag sample path on the merged (base + atom) grid. The stored value at
// an atom knot is the post-jump value; jump marks keep the exact left limit
// and jump size per atom event, in event order.
struct JumpMark {
    std::size_t knot;
    double pre;    // X at s-
    double delta;  // F(pre, z)
    double z;
};

struct AbortRecord {
    std::size_t knot;
    double value;
};

struct JumpPath {
    std::vector<double> times;   // merged grid knots actually covered
    std::vector<double> values;  // X per knot (post-jump at atom knots)
    std::vector<JumpMark> jumps;
    std::optional<AbortRecord> abort;  // explosion guard hit

    double t_end() const { return times.empty() ? 0.0 : times.back(); }
    double final_value() const { return values.back(); }
};

// One explicit Euler step per merged-grid interval, compensator evaluated at
// the left endpoint, jumps applied at exact atom times with exact left
// limits. Deterministic in (spec, noise, x0, cfg).
JumpPath solve(const SdeSpec& spec, const NoiseRealization& noise, double x0,
               const SolveConfig& cfg);

// Two equations driven by the one realization, stepped in lockstep on the
// shared merged grid. Requires equal measures. Equal specs and starts give
// bitwise-equal paths.
std::pair<JumpPath, JumpPath> coupled_solve(const SdeSpec& spec1, const SdeSpec& spec2,
                                            double x01, double x02,
                                            const NoiseRealization& noise,
                                            const SolveConfig& cfg);

struct Segment {
    std::size_t start_knot;
    std::size_t end_knot;   // inclusive; the big jump lands at end_knot
    double start_value;     // restart value: pre-jump + F(pre-jump, z) at the
                            // previous segment's closing atom
};

struct SegmentedPath {
    JumpPath path;
    std::vector<Segment> segments;
    double threshold = 1.0;
};

// Splits the solve at each jump with |F(X-, z)| >= threshold: the segment is
// closed at the offending atom, the restart value is X- + F(X-, z), and the
// remaining noise (atom events re-indexed, Brownian increments past the cut)
// drives the next segment. Arithmetic matches solve step for step, so the
// concatenated path equals solve's exactly.
SegmentedPath segmented_solve(const SdeSpec& spec, const NoiseRealization& noise, double x0,
                              const SolveConfig& cfg, double big_jump_threshold = 1.0);

// Knot-wise difference of two coupled paths (same merged grid), with jump
// marks aligned event by event.
JumpPath difference_path(const JumpPath& a, const JumpPath& b);

// CSV dump, columns t,X,is_atom,z,delta_X (one row per knot, plus one row
// per atom event at its knot).
std::string path_to_csv(const JumpPath& path);

}  // namespace jsde
