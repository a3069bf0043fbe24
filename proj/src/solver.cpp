#include "jsde/solver.hpp"

#include <cmath>

#include "jsde/common.hpp"
#include "jsde/numfmt.hpp"

namespace jsde {

namespace {

std::function<double(double)> resolve_compensator(const SdeSpec& spec, const SolveConfig& cfg) {
    if (cfg.compensator_mode == CompensatorMode::analytic) {
        if (!spec.compensator)
            throw Error("solve: spec '" + spec.label +
                        "' has no analytic compensator; use quadrature mode");
        return spec.compensator;
    }
    double tol = cfg.quad_rel_tol;
    return [&spec, tol](double x) {
        auto r = spec.measure.integrate([&](double z) { return spec.big_f(x, z); }, tol);
        if (!r.converged)
            throw Error("solve: compensator quadrature failed at x = " + format_double(x));
        return r.value;
    };
}

struct AdvanceResult {
    bool stopped_on_big_jump = false;
    std::size_t knot = 0;        // knot where the walk ended
    std::size_t next_event = 0;  // first unconsumed event index
    double x = 0;
};

// Walks the merged grid from (knot, event index, state). Processes pending
// events at the entry knot first, then alternates Euler step / atom events.
// With threshold > 0, returns right after applying a jump of size >=
// threshold so the caller can open a new segment. solve and segmented_solve
// share this walk, which is what makes them agree exactly.
AdvanceResult advance(const SdeSpec& spec, const std::function<double(double)>& comp,
                      const NoiseRealization& noise, JumpPath& path, std::size_t knot,
                      std::size_t event, double x, double guard, double threshold) {
    const auto& t = noise.times();
    const auto& w = noise.w();
    const auto& events = noise.events();

    auto guard_hit = [&](std::size_t k) {
        if (std::abs(x) <= guard) return false;
        path.abort = AbortRecord{k, x};
        path.times.resize(k + 1);
        path.values.resize(k + 1);
        return true;
    };

    for (;;) {
        while (event < events.size() && events[event].knot == knot) {
            double pre = x;
            double delta = spec.big_f(pre, events[event].z);
            x = pre + delta;
            path.values[knot] = x;
            path.jumps.push_back({knot, pre, delta, events[event].z});
            ++event;
            if (threshold > 0 && std::abs(delta) >= threshold)
                return {true, knot, event, x};
        }
        if (guard_hit(knot)) return {false, knot, event, x};
        if (knot + 1 >= t.size()) return {false, knot, event, x};
        double dt = t[knot + 1] - t[knot];
        double dw = w[knot + 1] - w[knot];
        x += spec.sigma(x) * dw + spec.b(x) * dt - dt * comp(x);
        ++knot;
        path.values[knot] = x;
    }
}

JumpPath fresh_path(const NoiseRealization& noise, double x0) {
    JumpPath path;
    path.times = noise.times();
    path.values.assign(noise.times().size(), 0.0);
    path.values[0] = x0;
    return path;
}

void check_solvable(const SdeSpec& spec, const NoiseRealization& noise, double x0,
                    const SolveConfig& cfg) {
    validate_spec(spec);
    if (!(cfg.explosion_guard > std::abs(x0)))
        throw Error("solve: explosion guard must exceed |x0|");
    if (!(spec.measure == noise.atoms().measure))
        throw Error("solve: spec measure differs from the noise realization's measure");
}

}  // namespace

JumpPath solve(const SdeSpec& spec, const NoiseRealization& noise, double x0,
               const SolveConfig& cfg) {
    check_solvable(spec, noise, x0, cfg);
    auto comp = resolve_compensator(spec, cfg);
    JumpPath path = fresh_path(noise, x0);
    advance(spec, comp, noise, path, 0, 0, x0, cfg.explosion_guard, 0.0);
    return path;
}

std::pair<JumpPath, JumpPath> coupled_solve(const SdeSpec& spec1, const SdeSpec& spec2,
                                            double x01, double x02,
                                            const NoiseRealization& noise,
                                            const SolveConfig& cfg) {
    if (!(spec1.measure == spec2.measure))
        throw Error("coupled_solve: specs must share the jump measure and window");
    return {solve(spec1, noise, x01, cfg), solve(spec2, noise, x02, cfg)};
}

SegmentedPath segmented_solve(const SdeSpec& spec, const NoiseRealization& noise, double x0,
                              const SolveConfig& cfg, double big_jump_threshold) {
    if (!(big_jump_threshold > 0))
        throw Error("segmented_solve: threshold must be positive");
    check_solvable(spec, noise, x0, cfg);
    auto comp = resolve_compensator(spec, cfg);
    SegmentedPath out;
    out.threshold = big_jump_threshold;
    out.path = fresh_path(noise, x0);

    std::size_t knot = 0, event = 0;
    double x = x0;
    for (;;) {
        Segment seg{knot, 0, x};
        auto res = advance(spec, comp, noise, out.path, knot, event, x, cfg.explosion_guard,
                           big_jump_threshold);
        seg.end_knot = res.knot;
        out.segments.push_back(seg);
        if (!res.stopped_on_big_jump) break;
        // restart with the shifted noise: remaining events and Brownian
        // increments continue from the cut
        knot = res.knot;
        event = res.next_event;
        x = res.x;
    }
    return out;
}

JumpPath difference_path(const JumpPath& a, const JumpPath& b) {
    if (a.times != b.times || a.jumps.size() != b.jumps.size())
        throw Error("difference_path: paths do not share a merged grid");
    JumpPath d;
    d.times = a.times;
    d.values.resize(a.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) d.values[i] = a.values[i] - b.values[i];
    d.jumps.reserve(a.jumps.size());
    for (std::size_t j = 0; j < a.jumps.size(); ++j) {
        const auto& ja = a.jumps[j];
        const auto& jb = b.jumps[j];
        if (ja.knot != jb.knot || ja.z != jb.z)
            throw Error("difference_path: jump events are not aligned");
        d.jumps.push_back({ja.knot, ja.pre - jb.pre, ja.delta - jb.delta, ja.z});
    }
    if (a.abort || b.abort) {
        std::size_t k = std::min(a.abort ? a.abort->knot : a.times.size(),
                                 b.abort ? b.abort->knot : b.times.size());
        d.abort = AbortRecord{k, d.values[std::min(k, d.values.size() - 1)]};
    }
    return d;
}

std::string path_to_csv(const JumpPath& path) {
    std::string out = "t,X,is_atom,z,delta_X\n";
    std::size_t j = 0;
    for (std::size_t k = 0; k < path.times.size(); ++k) {
        if (j < path.jumps.size() && path.jumps[j].knot == k) {
            while (j < path.jumps.size() && path.jumps[j].knot == k) {
                const auto& m = path.jumps[j];
                out += format_double(path.times[k]) + "," + format_double(m.pre + m.delta) +
                       ",1," + format_double(m.z) + "," + format_double(m.delta) + "\n";
                ++j;
            }
        } else {
            out += format_double(path.times[k]) + "," + format_double(path.values[k]) +
                   ",0,0,0\n";
        }
    }
    return out;
}

}  // namespace jsde
