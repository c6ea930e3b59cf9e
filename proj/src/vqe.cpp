#include "vqe.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "hamiltonian.hpp"
#include "linalg.hpp"
#include "synthesis.hpp"

namespace lmg {

VqeProblem VqeProblem::make(int particles, Encoding enc, double coupling) {
    VqeProblem p;
    p.particles = particles;
    p.encoding = enc;
    p.coupling = coupling;
    if (enc == Encoding::Gray) {
        p.hamiltonian = pauli_decompose(build_gray_hamiltonian(particles, coupling));
    } else {
        if (particles != 3)
            throw std::invalid_argument("VqeProblem: individual encoding supports N = 3 only");
        p.hamiltonian = build_individual_hamiltonian(particles, coupling);
    }
    p.groups = measurement_groups(p.hamiltonian, enc);
    return p;
}

Circuit VqeProblem::preparation_circuit(const std::vector<double>& angles) const {
    if (encoding == Encoding::Individual) {
        if (angles.size() != 1)
            throw std::invalid_argument("preparation_circuit: individual N=3 takes one angle");
        return individual_n3_circuit(angles[0]);
    }
    return synthesize_circuit(gray_ansatz(particles, angles));
}

namespace {
struct GroupResult {
    double contribution = 0.0;
    double variance = 0.0;
};

GroupResult measure_group(const MeasurementGroup& group, const Circuit& prep, long shots,
                          const NoiseModel& noise, const RngStream& stream) {
    GroupResult out;
    Circuit circ = prep;
    circ.append(basis_rotation_suffix(group));

    if (shots == 0) {
        const StateVector st = run_circuit(circ);
        for (const auto& [s, w] : group.members)
            out.contribution += w * exact_parity_expectation(st, s);
        return out;
    }

    auto rng = stream.engine();
    ShotRecord rec;
    if (noise.noiseless_gates()) {
        // all trajectories coincide; sample the multinomial directly
        rec = sample_bitstrings(run_circuit(circ), shots, noise, rng);
    } else {
        rec.width = circ.width;
        rec.counts.assign(std::size_t{1} << circ.width, 0);
        rec.shots = shots;
        for (long s = 0; s < shots; ++s) {
            const StateVector st = run_noisy_trajectory(circ, noise, rng);
            const ShotRecord one = sample_bitstrings(st, 1, noise, rng);
            for (std::size_t i = 0; i < rec.counts.size(); ++i) rec.counts[i] += one.counts[i];
        }
    }
    for (const auto& [s, w] : group.members) {
        if (pauli_weight(s) == 0) {
            out.contribution += w;  // identity: expectation 1, variance 0
            continue;
        }
        const double e = pauli_expectation(rec, s);
        out.contribution += w * e;
        out.variance += w * w * (1.0 - e * e) / double(shots);
    }
    return out;
}
}  // namespace

EnergyEstimate VqeProblem::estimate_circuit(const Circuit& prep, long shots,
                                            const NoiseModel& noise, const RngStream& rng,
                                            int threads) const {
    if (shots < 0) throw std::invalid_argument("estimate: shots must be >= 0");
    EnergyEstimate est;
    est.shots_per_circuit = shots;
    std::vector<GroupResult> results(groups.size());
    if (threads > 1 && groups.size() > 1) {
        std::vector<std::future<GroupResult>> futs;
        futs.reserve(groups.size());
        for (std::size_t gi = 0; gi < groups.size(); ++gi)
            futs.push_back(std::async(std::launch::async, measure_group, std::cref(groups[gi]),
                                      std::cref(prep), shots, std::cref(noise), rng.child(gi)));
        for (std::size_t gi = 0; gi < groups.size(); ++gi) results[gi] = futs[gi].get();
    } else {
        for (std::size_t gi = 0; gi < groups.size(); ++gi)
            results[gi] = measure_group(groups[gi], prep, shots, noise, rng.child(gi));
    }
    double var = 0.0;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        est.value += results[gi].contribution;
        var += results[gi].variance;
        est.per_group.emplace_back(groups[gi].basis, results[gi].contribution);
    }
    est.std_error = std::sqrt(var);
    return est;
}

EnergyEstimate VqeProblem::estimate(const std::vector<double>& angles, long shots,
                                    const NoiseModel& noise, const RngStream& rng,
                                    int threads) const {
    return estimate_circuit(preparation_circuit(angles), shots, noise, rng, threads);
}

EnergyEstimate estimate_energy(const AnsatzSpec& spec, long shots, const NoiseModel& noise,
                               const RngStream& rng, double coupling) {
    const VqeProblem p = VqeProblem::make(spec.particles, spec.encoding, coupling);
    return p.estimate(spec.angles, shots, noise, rng);
}

void OptimizerConfig::validate() const {
    if (reflection <= 0 || expansion <= 1 || contraction <= 0 || contraction >= 1 || shrink <= 0 ||
        shrink >= 1)
        throw std::invalid_argument("OptimizerConfig: coefficient out of admissible range");
    if (max_iterations < 1) throw std::invalid_argument("OptimizerConfig: max_iterations < 1");
}

OptimizerTrace nelder_mead(const Objective& objective, const std::vector<double>& start,
                           const OptimizerConfig& cfg, const TheoryFn& theory) {
    cfg.validate();
    const std::size_t n = start.size();
    if (n == 0) throw std::invalid_argument("nelder_mead: empty start point");

    OptimizerTrace trace;
    auto eval = [&](const std::vector<double>& x) {
        const double e = objective(x);
        OptimizerTrace::Point pt{x, e, std::nullopt};
        if (theory) pt.theory = theory(x);
        trace.evaluations.push_back(std::move(pt));
        return e;
    };

    std::vector<std::vector<double>> simplex;
    std::vector<double> vals;
    simplex.push_back(start);
    vals.push_back(eval(start));
    for (std::size_t i = 0; i < n; ++i) {
        auto p = start;
        p[i] += cfg.initial_step;
        simplex.push_back(p);
        vals.push_back(eval(p));
    }

    int it = 0;
    for (; it < cfg.max_iterations; ++it) {
        std::vector<std::size_t> order(n + 1);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::vector<std::vector<double>> sx(n + 1);
        std::vector<double> sv(n + 1);
        for (std::size_t i = 0; i <= n; ++i) sx[i] = simplex[order[i]], sv[i] = vals[order[i]];
        simplex = std::move(sx);
        vals = std::move(sv);

        if (vals[n] - vals[0] < cfg.tolerance) {
            trace.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / double(n);

        auto blend = [&](double coef, const std::vector<double>& towards) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + coef * (towards[j] - centroid[j]);
            return p;
        };

        const auto reflected = blend(-cfg.reflection, simplex[n]);
        const double fr = eval(reflected);
        if (fr < vals[0]) {
            const auto expanded = blend(cfg.expansion, reflected);
            const double fe = eval(expanded);
            if (fe < fr) {
                simplex[n] = expanded;
                vals[n] = fe;
            } else {
                simplex[n] = reflected;
                vals[n] = fr;
            }
        } else if (fr < vals[n - 1]) {
            simplex[n] = reflected;
            vals[n] = fr;
        } else {
            const bool outside = fr < vals[n];
            const auto contracted =
                outside ? blend(cfg.contraction, reflected) : blend(cfg.contraction, simplex[n]);
            const double fc = eval(contracted);
            if (fc < std::min(fr, vals[n])) {
                simplex[n] = contracted;
                vals[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        simplex[i][j] = simplex[0][j] + cfg.shrink * (simplex[i][j] - simplex[0][j]);
                    vals[i] = eval(simplex[i]);
                }
            }
        }
    }
    trace.iterations = it;

    const auto best = std::min_element(
        trace.evaluations.begin(), trace.evaluations.end(),
        [](const auto& a, const auto& b) { return a.energy < b.energy; });
    trace.best_theta = best->theta;
    trace.best_energy = best->energy;
    return trace;
}

RasterResult raster_scan_2d(const EnergyObjective& objective, const GridSpec& axis1,
                            const GridSpec& axis2) {
    if (axis1.points < 1 || axis2.points < 1)
        throw std::invalid_argument("raster_scan_2d: empty grid");
    RasterResult r;
    r.axis1 = axis1;
    r.axis2 = axis2;
    r.grid.reserve(std::size_t(axis1.points) * axis2.points);
    r.best_energy = std::numeric_limits<double>::infinity();
    for (int i = 0; i < axis1.points; ++i) {
        for (int j = 0; j < axis2.points; ++j) {
            const std::vector<double> theta{axis1.at(i), axis2.at(j)};
            EnergyEstimate e = objective(theta);
            if (e.value < r.best_energy) {  // strict: ties keep the first point
                r.best_energy = e.value;
                r.best_theta = theta;
            }
            r.grid.push_back(std::move(e));
        }
    }
    return r;
}

std::vector<double> line_scan_refine(const Objective& objective, std::vector<double> start,
                                     double half_range, int points) {
    if (points < 3) throw std::invalid_argument("line_scan_refine: need >= 3 points per axis");
    for (std::size_t axis = 0; axis < start.size(); ++axis) {
        std::vector<double> xs(points), es(points);
        for (int i = 0; i < points; ++i) {
            xs[i] = start[axis] - half_range + 2.0 * half_range * i / (points - 1);
            auto probe = start;
            probe[axis] = xs[i];
            es[i] = objective(probe);
        }
        // least-squares parabola a x^2 + b x + c
        double s0 = points, s1 = 0, s2 = 0, s3 = 0, s4 = 0, t0 = 0, t1 = 0, t2 = 0;
        for (int i = 0; i < points; ++i) {
            const double x = xs[i], x2 = x * x;
            s1 += x;
            s2 += x2;
            s3 += x2 * x;
            s4 += x2 * x2;
            t0 += es[i];
            t1 += x * es[i];
            t2 += x2 * es[i];
        }
        double next;
        try {
            const auto coef = solve_dense({{s4, s3, s2}, {s3, s2, s1}, {s2, s1, s0}}, {t2, t1, t0});
            const double a = coef[0], b = coef[1];
            if (a > 1e-12) {
                next = std::clamp(-b / (2.0 * a), xs.front(), xs.back());
            } else {
                // downward-opening fit: take the scanned endpoint with lower energy
                next = es.front() < es.back() ? xs.front() : xs.back();
            }
        } catch (const std::runtime_error&) {
            next = xs[std::min_element(es.begin(), es.end()) - es.begin()];
        }
        start[axis] = next;
    }
    return start;
}

CosineFit cosine_fit(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 4) throw std::invalid_argument("cosine_fit: need >= 4 samples");
    double lo = samples[0].first, hi = samples[0].first;
    for (const auto& [th, e] : samples) {
        lo = std::min(lo, th);
        hi = std::max(hi, th);
    }
    if (hi - lo <= std::numbers::pi / 2)
        throw std::invalid_argument("cosine_fit: samples must span more than half a period");

    // linear model E = c0 + c1 cos(2t) + c2 sin(2t)
    double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double rhs[3] = {0, 0, 0};
    for (const auto& [th, e] : samples) {
        const double b[3] = {1.0, std::cos(2 * th), std::sin(2 * th)};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) m[i][j] += b[i] * b[j];
            rhs[i] += b[i] * e;
        }
    }
    std::vector<double> c;
    try {
        c = solve_dense({{m[0][0], m[0][1], m[0][2]},
                         {m[1][0], m[1][1], m[1][2]},
                         {m[2][0], m[2][1], m[2][2]}},
                        {rhs[0], rhs[1], rhs[2]});
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("cosine_fit: degenerate sample placement");
    }
    CosineFit fit;
    fit.offset = c[0];
    fit.amplitude = std::hypot(c[1], c[2]);
    fit.phase = std::atan2(c[2], c[1]);
    fit.minimum = fit.offset - fit.amplitude;
    return fit;
}

}  // namespace lmg
