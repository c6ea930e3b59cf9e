#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ansatz.hpp"
#include "circuit.hpp"
#include "pauli.hpp"
#include "rng.hpp"
#include "simulator.hpp"

namespace lmg {

struct EnergyEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long shots_per_circuit = 0;  // 0 = exact expectations
    std::vector<std::pair<std::string, double>> per_group;  // basis -> weighted contribution
};

// One VQE problem instance: Hamiltonian decomposition, measurement groups and
// the preparation-circuit rule for its encoding.
struct VqeProblem {
    int particles = 2;
    Encoding encoding = Encoding::Gray;
    double coupling = 1.0;
    PauliHamiltonian hamiltonian;
    std::vector<MeasurementGroup> groups;

    static VqeProblem make(int particles, Encoding enc, double coupling);

    Circuit preparation_circuit(const std::vector<double>& angles) const;

    // shots = 0 evaluates exact expectations (no sampling, no noise). The rng
    // stream is split one substream per group circuit execution; when
    // `threads` > 1 the group circuits run concurrently with identical
    // results.
    EnergyEstimate estimate(const std::vector<double>& angles, long shots,
                            const NoiseModel& noise, const RngStream& rng, int threads = 1) const;

    // Same, but measuring a caller-supplied preparation circuit (used by the
    // ZNE folding paths).
    EnergyEstimate estimate_circuit(const Circuit& prep, long shots, const NoiseModel& noise,
                                    const RngStream& rng, int threads = 1) const;
};

// Convenience wrapper matching the AnsatzSpec calling convention.
EnergyEstimate estimate_energy(const AnsatzSpec& spec, long shots, const NoiseModel& noise,
                               const RngStream& rng, double coupling = 1.0);

struct OptimizerConfig {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    double initial_step = 0.25;  // radians
    int max_iterations = 300;
    double tolerance = 1e-9;  // on simplex energy spread

    void validate() const;
};

struct OptimizerTrace {
    struct Point {
        std::vector<double> theta;
        double energy = 0.0;
        std::optional<double> theory;
    };
    std::vector<Point> evaluations;
    bool converged = false;
    int iterations = 0;
    std::vector<double> best_theta;
    double best_energy = 0.0;
};

using Objective = std::function<double(const std::vector<double>&)>;
using TheoryFn = std::function<double(const std::vector<double>&)>;

// Standard simplex iteration with the configured coefficients; the trace
// records every evaluation. Stops on max iterations or when the simplex
// energy spread falls below tolerance.
OptimizerTrace nelder_mead(const Objective& objective, const std::vector<double>& start,
                           const OptimizerConfig& cfg, const TheoryFn& theory = nullptr);

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;  // exclusive
    int points = 1;
    double at(int i) const { return start + (stop - start) * i / points; }
};

struct RasterResult {
    GridSpec axis1, axis2;
    std::vector<EnergyEstimate> grid;  // row-major over (i1, i2)
    std::vector<double> best_theta;
    double best_energy = 0.0;
};

using EnergyObjective = std::function<EnergyEstimate(const std::vector<double>&)>;

// Evaluates every grid point; ties resolve to the first point in row-major
// order.
RasterResult raster_scan_2d(const EnergyObjective& objective, const GridSpec& axis1,
                            const GridSpec& axis2);

// For each axis in turn: scan `points` values across +-half_range, fit a
// parabola by least squares, and move to the fitted vertex clamped to the
// scanned range. A downward-opening or singular fit falls back to the
// endpoint/sample with the lowest sampled energy.
std::vector<double> line_scan_refine(const Objective& objective, std::vector<double> start,
                                     double half_range = 0.4, int points = 21);

struct CosineFit {
    double offset = 0.0;
    double amplitude = 0.0;
    double phase = 0.0;  // E = offset + amplitude * cos(2 theta - phase)
    double minimum = 0.0;
};

// Least-squares fit of samples (theta, E) to offset + amplitude cos(2 theta -
// phase). Requires >= 4 samples spanning more than half a period (pi/2).
CosineFit cosine_fit(const std::vector<std::pair<double, double>>& samples);

}  // namespace lmg
