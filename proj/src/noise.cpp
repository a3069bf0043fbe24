#include "jsde/noise.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jsde/common.hpp"
#include "jsde/numfmt.hpp"
#include "jsde/rng.hpp"

namespace jsde {

BrownianPath sample_brownian(const TimeGrid& grid, std::uint64_t seed) {
    RngStream rng(seed, "brownian");
    BrownianPath path{grid, {}};
    path.values.resize(grid.size());
    path.values[0] = 0.0;
    const auto& t = grid.knots();
    for (std::size_t i = 1; i < t.size(); ++i) {
        double dt = t[i] - t[i - 1];
        path.values[i] = path.values[i - 1] + std::sqrt(dt) * rng.normal();
    }
    return path;
}

PoissonAtoms sample_poisson_atoms(const LevyMeasure& measure, double t_end,
                                  std::uint64_t seed) {
    double mass = measure.mass();
    if (!std::isfinite(mass))
        throw Error(
            "sample_poisson_atoms: window has infinite lambda-mass; a positive "
            "small-jump truncation z_min is required for this measure");
    PoissonAtoms out{{}, measure, t_end};
    if (mass == 0 || t_end <= 0) return out;
    RngStream times(seed, "atoms/times");
    RngStream marks(seed, "atoms/marks");
    double s = 0;
    for (;;) {
        s += times.exponential(mass);
        if (s > t_end) break;
        out.atoms.push_back({s, measure.mark_quantile(marks.uniform01())});
    }
    return out;
}

void NoiseRealization::build_merged(const std::vector<double>& atom_w) {
    const auto& base_t = base_.grid.knots();
    const auto& base_w = base_.values;
    times_.clear();
    w_.clear();
    events_.clear();
    times_.reserve(base_t.size() + atoms_.atoms.size());
    w_.reserve(times_.capacity());
    std::size_t bi = 0, ai = 0;
    while (bi < base_t.size() || ai < atoms_.atoms.size()) {
        bool take_atom;
        if (bi == base_t.size()) take_atom = true;
        else if (ai == atoms_.atoms.size()) take_atom = false;
        else take_atom = atoms_.atoms[ai].s < base_t[bi];
        if (take_atom) {
            double s = atoms_.atoms[ai].s;
            if (times_.empty() || times_.back() != s) {
                times_.push_back(s);
                w_.push_back(atom_w[ai]);
            }
            events_.push_back({times_.size() - 1, atoms_.atoms[ai].z});
            ++ai;
        } else {
            if (times_.empty() || times_.back() != base_t[bi]) {
                times_.push_back(base_t[bi]);
                w_.push_back(base_w[bi]);
            }
            // atoms landing exactly on a base knot share it
            while (ai < atoms_.atoms.size() && atoms_.atoms[ai].s == base_t[bi]) {
                events_.push_back({times_.size() - 1, atoms_.atoms[ai].z});
                ++ai;
            }
            ++bi;
        }
    }
}

NoiseRealization::NoiseRealization(const TimeGrid& grid, const LevyMeasure& measure,
                                   std::uint64_t seed)
    : seed_(seed),
      base_(sample_brownian(grid, seed)),
      atoms_(sample_poisson_atoms(measure, grid.t_end(), seed)) {
    // Brownian values at atom times: sequential bridge conditioning inside
    // each base interval, drawn from a stream of their own.
    RngStream bridge(seed, "bridge");
    const auto& base_t = grid.knots();
    const auto& base_w = base_.values;
    std::vector<double> atom_w(atoms_.atoms.size());
    std::size_t iv = 0;  // base interval [base_t[iv], base_t[iv+1]]
    double t_prev = 0, w_prev = 0;
    for (std::size_t ai = 0; ai < atoms_.atoms.size(); ++ai) {
        double s = atoms_.atoms[ai].s;
        while (iv + 1 < base_t.size() && base_t[iv + 1] < s) {
            ++iv;
            t_prev = base_t[iv];
            w_prev = base_w[iv];
        }
        if (ai > 0 && atoms_.atoms[ai - 1].s == s) {
            atom_w[ai] = atom_w[ai - 1];
            continue;
        }
        if (iv + 1 >= base_t.size() || base_t[iv + 1] == s) {
            // atom at a base knot (or at t_end): value already fixed
            atom_w[ai] = iv + 1 < base_t.size() ? base_w[iv + 1] : base_w.back();
            if (iv + 1 < base_t.size()) {
                ++iv;
                t_prev = base_t[iv];
                w_prev = base_w[iv];
            }
            continue;
        }
        if (t_prev < base_t[iv]) {  // entered a fresh interval
            t_prev = base_t[iv];
            w_prev = base_w[iv];
        }
        double t_next = base_t[iv + 1], w_next = base_w[iv + 1];
        double span = t_next - t_prev;
        double mean = w_prev + (s - t_prev) / span * (w_next - w_prev);
        double var = (s - t_prev) * (t_next - s) / span;
        atom_w[ai] = mean + std::sqrt(var) * bridge.normal();
        t_prev = s;
        w_prev = atom_w[ai];
    }
    build_merged(atom_w);
}

std::string NoiseRealization::serialize() const {
    std::string out;
    out += "jsde-noise 1\n";
    out += "seed " + format_u64(seed_) + "\n";
    out += "grid " + format_double(base_.grid.t_end()) + " " +
           format_double(base_.grid.base_step()) + "\n";
    const auto& m = atoms_.measure;
    out += "measure " + to_string(m.kind()) + " " + format_double(m.z_min()) + " " +
           format_double(m.z_max()) + " " + format_double(m.alpha()) + "\n";
    out += "knots " + format_u64(base_.grid.size()) + "\n";
    for (std::size_t i = 0; i < base_.grid.size(); ++i)
        out += "k " + format_double(base_.grid.knots()[i]) + " " +
               format_double(base_.values[i]) + "\n";
    out += "atoms " + format_u64(atoms_.atoms.size()) + "\n";
    for (std::size_t i = 0; i < atoms_.atoms.size(); ++i) {
        const auto& a = atoms_.atoms[i];
        // refined Brownian value at the atom time rides along so that replay
        // does not have to re-run any generator
        double wv = w_[events_[i].knot];
        out += "a " + format_double(a.s) + " " + format_double(a.z) + " " +
               format_double(wv) + "\n";
    }
    return out;
}

NoiseRealization NoiseRealization::parse(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    auto expect = [&](const char* what) {
        if (!(in >> tok)) throw Error(std::string("noise parse: missing ") + what);
        return tok;
    };
    if (expect("magic") != "jsde-noise" || expect("version") != "1")
        throw Error("noise parse: bad header");
    if (expect("seed") != "seed") throw Error("noise parse: expected seed");
    std::uint64_t seed = parse_u64(expect("seed value"));
    if (expect("grid") != "grid") throw Error("noise parse: expected grid");
    double t_end = parse_double(expect("t_end"));
    double base_step = parse_double(expect("base_step"));
    if (expect("measure") != "measure") throw Error("noise parse: expected measure");
    LevyKind kind = parse_levy_kind(expect("kind"));
    double z_min = parse_double(expect("z_min"));
    double z_max = parse_double(expect("z_max"));
    double alpha = parse_double(expect("alpha"));
    LevyMeasure measure = [&] {
        switch (kind) {
            case LevyKind::stable_symmetric: return LevyMeasure::stable_symmetric(alpha, z_min, z_max);
            case LevyKind::stable_positive: return LevyMeasure::stable_positive(alpha, z_min, z_max);
            default: return LevyMeasure::lebesgue(z_min, z_max);
        }
    }();
    if (expect("knots") != "knots") throw Error("noise parse: expected knots");
    std::size_t n_knots = parse_u64(expect("knot count"));
    std::vector<double> kt(n_knots), kw(n_knots);
    for (std::size_t i = 0; i < n_knots; ++i) {
        if (expect("k") != "k") throw Error("noise parse: expected knot line");
        kt[i] = parse_double(expect("knot time"));
        kw[i] = parse_double(expect("knot value"));
    }
    if (expect("atoms") != "atoms") throw Error("noise parse: expected atoms");
    std::size_t n_atoms = parse_u64(expect("atom count"));
    std::vector<PoissonAtom> atoms(n_atoms);
    std::vector<double> atom_w(n_atoms);
    for (std::size_t i = 0; i < n_atoms; ++i) {
        if (expect("a") != "a") throw Error("noise parse: expected atom line");
        atoms[i].s = parse_double(expect("atom time"));
        atoms[i].z = parse_double(expect("atom mark"));
        atom_w[i] = parse_double(expect("atom w"));
    }

    NoiseRealization out;
    out.seed_ = seed;
    out.base_ = BrownianPath{TimeGrid(t_end, base_step, std::move(kt)), std::move(kw)};
    out.atoms_ = PoissonAtoms{std::move(atoms), measure, t_end};
    out.build_merged(atom_w);
    return out;
}

std::complex<double> truncated_exponent(const LevyMeasure& measure, double theta) {
    auto re = measure.integrate([&](double z) { return std::cos(theta * z) - 1.0; });
    auto im = measure.integrate([&](double z) { return std::sin(theta * z) - theta * z; });
    if (!re.converged || !im.converged)
        throw Error("truncated_exponent: quadrature failed");
    return {re.value, im.value};
}

StableIncrementDiagnostic stable_increment_check(std::span<const PoissonAtoms> paths,
                                                 const LevyMeasure& measure, double t,
                                                 std::span<const double> frequencies) {
    if (!measure.is_stable())
        throw Error("stable_increment_check: measure kind is not stable");
    StableIncrementDiagnostic diag;
    diag.frequencies.assign(frequencies.begin(), frequencies.end());
    diag.horizon = t;
    diag.n_paths = paths.size();
    diag.compensator_mean = measure.is_empty() ? 0.0 : measure.mean_mark();
    if (measure.two_sided()) diag.compensator_mean = 0.0;

    std::vector<double> sums;
    sums.reserve(paths.size());
    for (const auto& p : paths) {
        double s = 0;
        for (const auto& a : p.atoms) {
            if (a.s > t) break;
            s += a.z;
        }
        sums.push_back(s - t * diag.compensator_mean);
    }

    for (double theta : diag.frequencies) {
        std::complex<double> acc{0, 0};
        for (double s : sums) acc += std::complex<double>{std::cos(theta * s), std::sin(theta * s)};
        if (!sums.empty()) acc /= static_cast<double>(sums.size());
        else acc = {1.0, 0.0};
        diag.empirical.push_back(acc);
        std::complex<double> expo =
            measure.is_empty() ? std::complex<double>{0, 0} : truncated_exponent(measure, theta);
        diag.theoretical.push_back(std::exp(t * expo));
        diag.max_abs_deviation =
            std::max(diag.max_abs_deviation, std::abs(diag.empirical.back() - diag.theoretical.back()));
    }
    return diag;
}

StableIncrementDiagnostic stable_increment_check(const PoissonAtoms& atoms,
                                                 const LevyMeasure& measure, double t) {
    static const double default_freqs[] = {0.5, 1.0, 2.0};
    return stable_increment_check(std::span<const PoissonAtoms>{&atoms, 1}, measure, t,
                                  std::span<const double>{default_freqs, 3});
}

}  // namespace jsde
