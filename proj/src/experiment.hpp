#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "simulator.hpp"
#include "vqe.hpp"
#include "zne.hpp"

namespace lmg {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat JSON experiment description. Unknown keys are rejected; presets
// "paper-noise" (F_CZ = 0.971, SPAM 0.025) and "optimized-gate" (F_CZ =
// 0.986, SPAM 0.025) pin the two reported fidelity regimes; "none" disables
// noise. Defaults: V = 1, 400 shots, gray encoding, nelder-mead, no ZNE.
struct ExperimentConfig {
    int particles = 3;
    double coupling = 1.0;
    Encoding encoding = Encoding::Gray;
    long shots = 400;
    bool exact_expectations = false;
    std::uint64_t seed = 1;
    std::string noise_preset = "paper-noise";
    NoiseModel noise;
    std::string optimizer = "nelder-mead";
    OptimizerConfig nm;
    int restarts = 1;  // > 1 re-runs the optimizer from randomized inits
    std::string init = "zeros";
    std::vector<double> init_angles;  // when init == "explicit"
    std::string zne_method = "none";  // none | fiim | siim
    std::vector<int> insertions = {0, 1, 2};
    bool zne_weighted_fit = true;
    int raster_points = 41;
    double raster_start = 0.0;
    double raster_stop = 3.14159265358979323846;
    double line_half_range = 0.4;
    int line_points = 21;
    int cosine_points = 24;
    int threads = 1;
    std::string output_dir = ".";

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_file(const std::string& path);
    std::string to_json() const;
};

struct RunResult {
    std::vector<double> best_theta;
    double e_raw = 0.0;        // unmitigated estimate at best theta
    double e_raw_stderr = 0.0;
    std::optional<double> e_zne;
    std::optional<double> e_zne_stderr;
    double e_theory = 0.0;
    double pfd = 0.0;  // |E_theory - E_final| / |E_theory| * 100
    OptimizerTrace trace;
    std::optional<RasterResult> raster;
    std::optional<ZneSeries> zne;

    std::string to_json() const;
    std::string trace_json() const;
    std::string trace_csv() const;
    std::string raster_csv() const;
    std::string zne_csv() const;
};

// Full pipeline: ansatz -> circuits -> (noisy) sampling -> optimizer ->
// optional ZNE. Deterministic for a fixed config.
RunResult run_experiment(const ExperimentConfig& cfg);

// Runs and writes result.json, trace.csv (or raster.csv) and zne.csv into
// cfg.output_dir (the LMGVQE_OUTPUT_DIR environment variable overrides it).
// Returns the paths written.
std::vector<std::string> run_experiment_to_files(const ExperimentConfig& cfg,
                                                 const std::optional<std::string>& emit_circuit);

}  // namespace lmg
