#include "experiment.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"

#include "ansatz.hpp"
#include "hamiltonian.hpp"
#include "synthesis.hpp"

namespace lmg {

namespace {
NoiseModel preset_noise(const std::string& name) {
    if (name == "paper-noise") return {0.971, 0.025, std::nullopt};
    if (name == "optimized-gate") return {0.986, 0.025, std::nullopt};
    if (name == "none") return {1.0, 0.0, std::nullopt};
    throw ConfigError("unknown noise preset \"" + name + '"');
}
}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    static const std::set<std::string> known = {
        "N",          "V",           "encoding",    "shots",         "exact_expectations",
        "seed",       "noise",       "cz_fidelity", "spam_error",    "optimizer",
        "max_iters",  "nm_step",     "nm_tolerance", "init",         "zne",
        "insertions", "zne_weighted_fit", "raster_points", "raster_start", "raster_stop",
        "line_half_range", "line_points", "cosine_points", "threads",  "output_dir",
        "restarts"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.count(key)) throw ConfigError("unknown config key \"" + key + '"');
    }

    ExperimentConfig cfg;
    auto get = [&](const char* key, auto& slot) {
        if (j.contains(key)) {
            try {
                slot = j.at(key).get<std::decay_t<decltype(slot)>>();
            } catch (const nlohmann::json::exception&) {
                throw ConfigError(std::string("config key \"") + key + "\" has the wrong type");
            }
        }
    };
    get("N", cfg.particles);
    get("V", cfg.coupling);
    std::string enc = "gray";
    get("encoding", enc);
    if (enc == "gray") cfg.encoding = Encoding::Gray;
    else if (enc == "individual") cfg.encoding = Encoding::Individual;
    else throw ConfigError("encoding must be \"gray\" or \"individual\"");
    get("shots", cfg.shots);
    get("exact_expectations", cfg.exact_expectations);
    get("seed", cfg.seed);
    get("noise", cfg.noise_preset);
    cfg.noise = preset_noise(cfg.noise_preset);
    get("cz_fidelity", cfg.noise.cz_fidelity);
    get("spam_error", cfg.noise.spam_error);
    get("optimizer", cfg.optimizer);
    get("max_iters", cfg.nm.max_iterations);
    get("nm_step", cfg.nm.initial_step);
    get("nm_tolerance", cfg.nm.tolerance);
    get("restarts", cfg.restarts);
    if (j.contains("init")) {
        if (j["init"].is_array()) {
            cfg.init = "explicit";
            cfg.init_angles = j["init"].get<std::vector<double>>();
        } else {
            get("init", cfg.init);
        }
    }
    get("zne", cfg.zne_method);
    get("insertions", cfg.insertions);
    get("zne_weighted_fit", cfg.zne_weighted_fit);
    get("raster_points", cfg.raster_points);
    get("raster_start", cfg.raster_start);
    get("raster_stop", cfg.raster_stop);
    get("line_half_range", cfg.line_half_range);
    get("line_points", cfg.line_points);
    get("cosine_points", cfg.cosine_points);
    get("threads", cfg.threads);
    get("output_dir", cfg.output_dir);

    // validation before any run
    if (cfg.particles < 2) throw ConfigError("N must be >= 2");
    if (cfg.encoding == Encoding::Individual && cfg.particles != 3)
        throw ConfigError("individual encoding supports N = 3 only");
    if (!cfg.exact_expectations && cfg.shots < 1)
        throw ConfigError("shots must be >= 1 (or set exact_expectations)");
    if (cfg.noise.cz_fidelity < 0 || cfg.noise.cz_fidelity > 1)
        throw ConfigError("cz_fidelity must be in [0, 1]");
    if (cfg.noise.spam_error < 0 || cfg.noise.spam_error > 1)
        throw ConfigError("spam_error must be in [0, 1]");
    if (cfg.optimizer != "nelder-mead" && cfg.optimizer != "raster" &&
        cfg.optimizer != "line-refine" && cfg.optimizer != "cosine")
        throw ConfigError("optimizer must be nelder-mead | raster | line-refine | cosine");
    if (cfg.init != "zeros" && cfg.init != "random" && cfg.init != "explicit" &&
        cfg.init != "optimal")
        throw ConfigError("init must be zeros | random | optimal | an angle list");
    if (cfg.zne_method != "none" && cfg.zne_method != "fiim" && cfg.zne_method != "siim")
        throw ConfigError("zne must be none | fiim | siim");
    for (int n : cfg.insertions)
        if (n < 0) throw ConfigError("insertions must be >= 0");
    if (cfg.zne_method != "none" && cfg.insertions.size() < 2)
        throw ConfigError("zne needs >= 2 insertion counts");
    if (cfg.restarts < 1) throw ConfigError("restarts must be >= 1");
    if (cfg.raster_points < 1) throw ConfigError("raster_points must be >= 1");
    if (cfg.line_points < 3) throw ConfigError("line_points must be >= 3");
    if (cfg.cosine_points < 4) throw ConfigError("cosine_points must be >= 4");
    if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
    try {
        cfg.nm.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string ExperimentConfig::to_json() const {
    nlohmann::ordered_json j;
    j["N"] = particles;
    j["V"] = coupling;
    j["encoding"] = encoding == Encoding::Gray ? "gray" : "individual";
    j["shots"] = shots;
    j["exact_expectations"] = exact_expectations;
    j["seed"] = seed;
    j["noise"] = noise_preset;
    j["cz_fidelity"] = noise.cz_fidelity;
    j["spam_error"] = noise.spam_error;
    j["optimizer"] = optimizer;
    j["max_iters"] = nm.max_iterations;
    j["init"] = init == "explicit" ? nlohmann::ordered_json(init_angles)
                                   : nlohmann::ordered_json(init);
    j["zne"] = zne_method;
    j["insertions"] = insertions;
    j["threads"] = threads;
    j["output_dir"] = output_dir;
    return j.dump(2);
}

namespace {
std::vector<double> optimal_angles(int particles, double coupling) {
    const auto eig = jacobi_eigensolve(gray_block(particles, coupling), true);
    auto ground = eig.vectors.front();
    if (ground[0] < 0)
        for (double& x : ground) x = -x;
    if (particles == 4) {
        // one-angle family (cos^2 t, -sin 2t / sqrt 2, sin^2 t); the ground
        // vector has positive middle component, so the angle is negative
        const double t = std::atan2(std::sqrt(std::abs(ground[2])), std::sqrt(std::abs(ground[0])));
        return {ground[1] >= 0 ? -t : t};
    }
    return angles_from_block_amplitudes(ground);
}
}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
    const VqeProblem problem = VqeProblem::make(cfg.particles, cfg.encoding, cfg.coupling);
    const int n_angles = ansatz_angle_count(cfg.particles, cfg.encoding);
    const long shots = cfg.exact_expectations ? 0 : cfg.shots;
    const RngStream master(cfg.seed);

    // substream map: 0 = init, 1 + i = optimizer evaluation i, 1e6 + k = ZNE
    std::vector<double> start(n_angles, 0.0);
    if (cfg.init == "random") {
        auto rng = master.child(0).engine();
        std::uniform_real_distribution<double> u(0.0, std::numbers::pi);
        for (double& a : start) a = u(rng);
    } else if (cfg.init == "explicit") {
        if (int(cfg.init_angles.size()) != n_angles)
            throw ConfigError("init angle list must have " + std::to_string(n_angles) +
                              " entries");
        start = cfg.init_angles;
    } else if (cfg.init == "optimal") {
        if (cfg.encoding != Encoding::Gray)
            throw ConfigError("init=optimal requires the gray encoding");
        start = optimal_angles(cfg.particles, cfg.coupling);
    }

    std::uint64_t eval_counter = 0;
    std::map<std::vector<double>, double> memo;  // exact mode re-evaluates identically
    auto objective = [&](const std::vector<double>& th) {
        if (shots == 0) {
            auto it = memo.find(th);
            if (it != memo.end()) return it->second;
        }
        const double e =
            problem.estimate(th, shots, cfg.noise, master.child(1 + eval_counter++), cfg.threads)
                .value;
        if (shots == 0) memo[th] = e;
        return e;
    };
    const NoiseModel quiet{1.0, 0.0, std::nullopt};
    auto theory = [&](const std::vector<double>& th) {
        return problem.estimate(th, 0, quiet, master).value;
    };

    RunResult res;
    if (cfg.optimizer == "nelder-mead") {
        res.trace = nelder_mead(objective, start, cfg.nm, theory);
        // optional mitigation: re-run from randomized inits, keep the best
        for (int r = 1; r < cfg.restarts; ++r) {
            auto rng = master.child(0).child(r).engine();
            std::uniform_real_distribution<double> u(0.0, std::numbers::pi);
            std::vector<double> init(n_angles);
            for (double& a : init) a = u(rng);
            auto attempt = nelder_mead(objective, init, cfg.nm, theory);
            if (attempt.best_energy < res.trace.best_energy) res.trace = std::move(attempt);
        }
        res.best_theta = res.trace.best_theta;
    } else if (cfg.optimizer == "raster") {
        if (n_angles != 2) throw ConfigError("raster optimizer needs a two-angle ansatz");
        GridSpec ax{cfg.raster_start, cfg.raster_stop, cfg.raster_points};
        auto eobj = [&](const std::vector<double>& th) {
            EnergyEstimate e;
            e.value = objective(th);
            e.shots_per_circuit = shots;
            return e;
        };
        res.raster = raster_scan_2d(eobj, ax, ax);
        res.best_theta = res.raster->best_theta;
    } else if (cfg.optimizer == "line-refine") {
        res.best_theta = line_scan_refine(objective, start, cfg.line_half_range, cfg.line_points);
    } else {
        if (n_angles != 1) throw ConfigError("cosine optimizer needs a one-angle ansatz");
        std::vector<std::pair<double, double>> samples;
        for (int i = 0; i < cfg.cosine_points; ++i) {
            const double th = std::numbers::pi * i / cfg.cosine_points;
            samples.emplace_back(th, objective({th}));
        }
        const CosineFit fit = cosine_fit(samples);
        res.best_theta = {std::remainder((fit.phase + std::numbers::pi) / 2.0, std::numbers::pi)};
        for (const auto& [th, e] : samples)
            res.trace.evaluations.push_back({{th}, e, theory({th})});
        res.trace.best_theta = res.best_theta;
        res.trace.best_energy = fit.minimum;
    }

    const EnergyEstimate raw =
        problem.estimate(res.best_theta, shots, cfg.noise, master.child(900000), cfg.threads);
    res.e_raw = raw.value;
    res.e_raw_stderr = raw.std_error;

    if (cfg.zne_method != "none") {
        const ZneMethod m = cfg.zne_method == "fiim" ? ZneMethod::FIIM : ZneMethod::SIIM;
        res.zne = zne_series(problem, res.best_theta, m, cfg.insertions,
                             shots == 0 ? cfg.shots : shots, cfg.noise, master.child(1000000),
                             cfg.threads);
        const Extrapolation ex = extrapolate_linear(*res.zne, cfg.zne_weighted_fit);
        res.e_zne = ex.intercept;
        res.e_zne_stderr = ex.std_error;
    }

    res.e_theory = exact_ground_energy(cfg.particles, cfg.coupling);
    const double e_final = res.e_zne.value_or(res.e_raw);
    res.pfd = std::abs(res.e_theory - e_final) / std::abs(res.e_theory) * 100.0;
    return res;
}

std::string RunResult::to_json() const {
    nlohmann::ordered_json j;
    j["best_theta"] = best_theta;
    j["E_raw"] = e_raw;
    j["E_raw_stderr"] = e_raw_stderr;
    if (e_zne) {
        j["E_zne"] = *e_zne;
        j["E_zne_stderr"] = *e_zne_stderr;
    } else {
        j["E_zne"] = nullptr;
    }
    j["E_theory"] = e_theory;
    j["PFD_percent"] = pfd;
    j["evaluations"] = trace.evaluations.size();
    j["converged"] = trace.converged;
    return j.dump(2);
}

std::string RunResult::trace_json() const {
    if (trace.evaluations.empty()) return "";
    nlohmann::ordered_json j;
    j["converged"] = trace.converged;
    j["iterations"] = trace.iterations;
    j["best_theta"] = trace.best_theta;
    j["best_energy"] = trace.best_energy;
    j["evaluations"] = nlohmann::ordered_json::array();
    for (const auto& pt : trace.evaluations) {
        nlohmann::ordered_json e;
        e["theta"] = pt.theta;
        e["energy"] = pt.energy;
        if (pt.theory) e["theory"] = *pt.theory;
        j["evaluations"].push_back(std::move(e));
    }
    return j.dump(2);
}

std::string RunResult::trace_csv() const {
    std::ostringstream os;
    os.precision(17);
    if (trace.evaluations.empty()) return "";
    const std::size_t n = trace.evaluations.front().theta.size();
    os << "iteration";
    for (std::size_t i = 0; i < n; ++i) os << ",theta" << i + 1;
    os << ",E_measured,E_theory\n";
    for (std::size_t k = 0; k < trace.evaluations.size(); ++k) {
        const auto& pt = trace.evaluations[k];
        os << k;
        for (double t : pt.theta) os << "," << t;
        os << "," << pt.energy << ",";
        if (pt.theory) os << *pt.theory;
        os << "\n";
    }
    return os.str();
}

std::string RunResult::raster_csv() const {
    if (!raster) return "";
    std::ostringstream os;
    os.precision(17);
    os << "theta1,theta2,E,stderr\n";
    for (int i = 0; i < raster->axis1.points; ++i)
        for (int j = 0; j < raster->axis2.points; ++j) {
            const auto& e = raster->grid[std::size_t(i) * raster->axis2.points + j];
            os << raster->axis1.at(i) << "," << raster->axis2.at(j) << "," << e.value << ","
               << e.std_error << "\n";
        }
    return os.str();
}

std::string RunResult::zne_csv() const {
    if (!zne) return "";
    std::ostringstream os;
    os.precision(17);
    os << "r,E,stderr\n";
    for (const auto& p : zne->points)
        os << p.r << "," << p.energy.value << "," << p.energy.std_error << "\n";
    return os.str();
}

std::vector<std::string> run_experiment_to_files(const ExperimentConfig& cfg,
                                                 const std::optional<std::string>& emit_circuit) {
    namespace fs = std::filesystem;
    ExperimentConfig effective = cfg;
    if (const char* env = std::getenv("LMGVQE_OUTPUT_DIR")) effective.output_dir = env;

    const RunResult res = run_experiment(effective);

    fs::create_directories(effective.output_dir);
    std::vector<std::string> written;
    auto write = [&](const std::string& name, const std::string& content) {
        if (content.empty()) return;
        const auto path = (fs::path(effective.output_dir) / name).string();
        std::ofstream out(path, std::ios::binary);
        out << content;
        written.push_back(path);
    };
    write("result.json", res.to_json() + "\n");
    write("trace.json", res.trace_json());
    write("trace.csv", res.trace_csv());
    write("raster.csv", res.raster_csv());
    write("zne.csv", res.zne_csv());
    if (emit_circuit) {
        const VqeProblem problem =
            VqeProblem::make(effective.particles, effective.encoding, effective.coupling);
        const Circuit prep = problem.preparation_circuit(res.best_theta);
        std::ofstream out(*emit_circuit, std::ios::binary);
        out << prep.to_json() << "\n";
        written.push_back(*emit_circuit);
    }
    return written;
}

}  // namespace lmg
