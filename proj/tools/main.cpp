#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ansatz.hpp"
#include "experiment.hpp"
#include "graycode.hpp"
#include "hamiltonian.hpp"
#include "hardware.hpp"
#include "synthesis.hpp"
#include "vqe.hpp"
#include "zne.hpp"

namespace {

int cmd_exact(int particles, double coupling) {
    const double e0 = lmg::exact_ground_energy(particles, coupling);
    const auto spectrum = lmg::gray_spectrum(particles, coupling);
    std::cout << "N = " << particles << ", V = " << coupling << "\n";
    std::cout << "ground energy: " << std::setprecision(10) << e0 << "\n";
    std::cout << "gray-block spectrum:";
    for (double v : spectrum) std::cout << " " << v;
    std::cout << "\n";
    return 0;
}

int cmd_weights(int particles, double coupling, const std::string& encoding,
                const std::string& csv_path) {
    lmg::PauliHamiltonian h;
    lmg::Encoding enc;
    if (encoding == "gray") {
        enc = lmg::Encoding::Gray;
        h = lmg::pauli_decompose(lmg::build_gray_hamiltonian(particles, coupling));
    } else if (encoding == "individual") {
        enc = lmg::Encoding::Individual;
        h = lmg::build_individual_hamiltonian(particles, coupling);
    } else {
        std::cerr << "encoding must be gray or individual\n";
        return 2;
    }
    const auto groups = lmg::measurement_groups(h, enc);
    std::ostringstream csv;
    csv << "grouping,string,weight\n";
    for (const auto& g : groups) {
        std::cout << g.basis << " grouping\n";
        for (const auto& [s, w] : g.members) {
            std::cout << "  " << s << "  " << std::setw(22) << std::setprecision(15) << w << "\n";
            csv << g.basis << "," << s << "," << std::setprecision(17) << w << "\n";
        }
    }
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        out << csv.str();
        std::cout << "wrote " << csv_path << "\n";
    }
    return 0;
}

int cmd_graycode(int width) {
    const auto g = lmg::binary_reflected_gray(width);
    for (auto code : g.codes) {
        std::string bits(width, '0');
        for (int b = 0; b < width; ++b)
            if (code & (1u << (width - 1 - b))) bits[b] = '1';
        std::cout << bits << "\n";
    }
    return 0;
}

int cmd_beam(double waist, double flatness, double i0, double x, double y, double x0, double y0,
             const std::string& csv_path) {
    lmg::BeamProfile beam{i0, x0, y0, waist, flatness};
    std::cout << "I(" << x << ", " << y << ") = " << lmg::super_gaussian_intensity(beam, x, y)
              << "\n";
    const double r = std::hypot(x - x0, y - y0);
    std::cout << "dI/dr at r = " << r << ": " << lmg::super_gaussian_radial_derivative(beam, r)
              << "\n";
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        out << "r,intensity,dI_dr\n";
        for (int i = 0; i <= 400; ++i) {
            const double rr = 2.0 * waist * i / 400.0;
            out << rr << "," << lmg::super_gaussian_intensity(beam, x0 + rr, y0) << ","
                << lmg::super_gaussian_radial_derivative(beam, rr) << "\n";
        }
        std::cout << "wrote " << csv_path << "\n";
    }
    return 0;
}

int cmd_transport(double distance, double duration, double omega, double xho,
                  const std::string& csv_path) {
    lmg::TransportSpec spec{distance, duration, omega, xho};
    const auto heat = lmg::heating_estimates(spec);
    std::cout << "a_max = " << lmg::quintic_max_acceleration(spec) << " um/us^2\n";
    std::cout << "dn (constant jerk) = " << heat.dn_constant_jerk << "\n";
    std::cout << "dn (minimal jerk)  = " << heat.dn_minimal_jerk << "\n";
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        out << "t,position,velocity,acceleration\n";
        for (int i = 0; i <= 300; ++i) {
            const double t = duration * i / 300.0;
            const auto p = lmg::quintic_trajectory(spec, t);
            out << t << "," << p.position << "," << p.velocity << "," << p.acceleration << "\n";
        }
        std::cout << "wrote " << csv_path << "\n";
    }
    return 0;
}

int cmd_rbfit(const std::string& csv_in, int dimension) {
    std::ifstream in(csv_in);
    if (!in) {
        std::cerr << "cannot open " << csv_in << "\n";
        return 2;
    }
    std::vector<double> lengths, pops;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || !(std::isdigit(line[0]) || line[0] == '-' || line[0] == '.')) continue;
        std::istringstream ls(line);
        double m, p;
        char comma;
        if (ls >> m >> comma >> p) {
            lengths.push_back(m);
            pops.push_back(p);
        }
    }
    const auto fit = lmg::rb_fit(lengths, pops, dimension);
    std::cout << "A0 = " << fit.a0 << ", B0 = " << fit.b0 << ", p = " << fit.p << " +- "
              << fit.p_std_error << "\n";
    std::cout << "r_c = " << fit.error_per_gate << ", fidelity = " << fit.fidelity << "\n";
    return 0;
}

int cmd_zne(int particles, double coupling, const std::string& method, std::vector<int> insertions,
            long shots, std::uint64_t seed, const std::string& noise_name,
            const std::vector<double>& theta_opt, bool plain_fit, const std::string& csv_path,
            const std::string& json_path) {
    const lmg::ExperimentConfig parsed =
        lmg::ExperimentConfig::from_json_text("{\"noise\": \"" + noise_name + "\"}");
    const lmg::NoiseModel noise = parsed.noise;

    const auto problem = lmg::VqeProblem::make(particles, lmg::Encoding::Gray, coupling);
    std::vector<double> theta = theta_opt;
    if (theta.empty()) {
        const auto eig = lmg::jacobi_eigensolve(lmg::gray_block(particles, coupling), true);
        auto ground = eig.vectors.front();
        if (ground[0] < 0)
            for (double& v : ground) v = -v;
        theta = lmg::angles_from_block_amplitudes(ground);
    }
    const lmg::ZneMethod m = method == "siim" ? lmg::ZneMethod::SIIM : lmg::ZneMethod::FIIM;
    const auto series = lmg::zne_series(problem, theta, m, insertions, shots, noise,
                                        lmg::RngStream(seed));
    const auto ex = lmg::extrapolate_linear(series, !plain_fit);
    std::ostringstream csv;
    csv << "r,E,stderr\n";
    std::cout << "r, E, stderr\n";
    for (const auto& p : series.points) {
        std::cout << p.r << ", " << p.energy.value << ", " << p.energy.std_error << "\n";
        csv << p.r << "," << std::setprecision(17) << p.energy.value << ","
            << p.energy.std_error << "\n";
    }
    std::cout << "intercept (r = 0): " << ex.intercept << " +- " << ex.std_error << "\n";
    std::cout << "theory: " << lmg::exact_ground_energy(particles, coupling) << "\n";
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        out << csv.str();
        std::cout << "wrote " << csv_path << "\n";
    }
    if (!json_path.empty()) {
        nlohmann::ordered_json j;
        j["method"] = method;
        j["series"] = nlohmann::ordered_json::array();
        for (const auto& p : series.points)
            j["series"].push_back({{"r", p.r}, {"E", p.energy.value}, {"stderr", p.energy.std_error}});
        j["intercept"] = ex.intercept;
        j["intercept_stderr"] = ex.std_error;
        j["slope"] = ex.slope;
        j["theory"] = lmg::exact_ground_energy(particles, coupling);
        std::ofstream out(json_path, std::ios::binary);
        out << j.dump(2) << "\n";
        std::cout << "wrote " << json_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LMG VQE workbench: exact solutions, Pauli weight tables, shot-sampled VQE "
                 "with noise, zero-noise extrapolation, and hardware calculators"};
    app.require_subcommand(1);

    // exact
    int n_exact = 3;
    double v_exact = 1.0;
    auto* exact = app.add_subcommand("exact", "exact ground energy and Gray-block spectrum");
    exact->add_option("--particles,-N", n_exact, "particle count")->required();
    exact->add_option("--coupling,-V", v_exact, "interaction strength V");

    // weights
    int n_w = 3;
    double v_w = 1.0;
    std::string enc_w = "gray", csv_w;
    auto* weights = app.add_subcommand("weights", "Pauli weight table by measurement grouping");
    weights->add_option("--particles,-N", n_w)->required();
    weights->add_option("--coupling,-V", v_w);
    weights->add_option("--encoding", enc_w)->check(CLI::IsMember({"gray", "individual"}));
    weights->add_option("--csv", csv_w, "also write a CSV table");

    // graycode
    int width_g = 2;
    auto* gray = app.add_subcommand("graycode", "emit the binary reflected Gray code");
    gray->add_option("--width", width_g, "bit width")->required();

    // vqe run: a JSON config file, individual flags, or flags overriding a file
    auto* vqe = app.add_subcommand("vqe", "variational runs");
    vqe->require_subcommand(1);
    std::string cfg_path;
    std::string emit_circuit;
    auto* run = vqe->add_subcommand("run", "full pipeline from a JSON config and/or flags");
    run->add_option("--config", cfg_path, "flat JSON config file");
    int run_n = -1;
    double run_v = -1;
    long run_shots = -1;
    std::int64_t run_seed = -1;
    int run_iters = -1, run_threads = -1;
    std::string run_enc, run_noise, run_opt, run_init, run_out, run_zne;
    bool run_exact = false;
    run->add_option("--particles,-N", run_n, "particle count");
    run->add_option("--coupling,-V", run_v, "interaction strength");
    run->add_option("--encoding", run_enc)->check(CLI::IsMember({"gray", "individual"}));
    run->add_option("--shots", run_shots, "bitstring measurements per circuit");
    run->add_option("--seed", run_seed);
    run->add_option("--noise", run_noise)
        ->check(CLI::IsMember({"paper-noise", "optimized-gate", "none"}));
    run->add_option("--optimizer", run_opt)
        ->check(CLI::IsMember({"nelder-mead", "raster", "line-refine", "cosine"}));
    run->add_option("--max-iters", run_iters);
    run->add_option("--init", run_init, "zeros | random | optimal | comma-separated angles");
    run->add_option("--zne", run_zne)->check(CLI::IsMember({"none", "fiim", "siim"}));
    run->add_flag("--exact", run_exact, "exact expectations instead of sampling");
    run->add_option("--output-dir", run_out);
    run->add_option("--threads", run_threads);
    run->add_option("--emit-circuit", emit_circuit, "dump the best-theta ansatz circuit as JSON");

    // zne
    int n_z = 5;
    double v_z = 1.0;
    std::string method_z = "fiim", noise_z = "paper-noise", csv_z;
    std::vector<int> ins_z = {0, 1, 2};
    long shots_z = 400;
    std::uint64_t seed_z = 1;
    std::vector<double> theta_z;
    bool plain_z = false;
    auto* zne = app.add_subcommand("zne", "identity-insertion ZNE series and intercept");
    zne->add_option("--particles,-N", n_z)->required();
    zne->add_option("--coupling,-V", v_z);
    zne->add_option("--method", method_z)->check(CLI::IsMember({"fiim", "siim"}));
    zne->add_option("--insertions", ins_z, "identity insertion counts")->expected(-1);
    zne->add_option("--shots", shots_z);
    zne->add_option("--seed", seed_z);
    zne->add_option("--noise", noise_z)->check(CLI::IsMember({"paper-noise", "optimized-gate", "none"}));
    zne->add_option("--theta", theta_z, "variational angles (default: exact optimum)")->expected(-1);
    zne->add_flag("--plain-fit", plain_z, "ordinary instead of variance-weighted least squares");
    zne->add_option("--csv", csv_z, "write the (r, E, sigma) series");
    std::string json_z;
    zne->add_option("--json", json_z, "write the series and intercept as JSON");

    // hardware
    auto* hw = app.add_subcommand("hardware", "beam, transport and benchmarking calculators");
    hw->require_subcommand(1);
    double waist = 8.6, flat = 2.6, i0 = 1.0, bx = 1.25, by = 0.0, bx0 = 0.0, by0 = 0.0;
    std::string csv_beam;
    auto* beam = hw->add_subcommand("beam", "super-Gaussian intensity profile");
    beam->add_option("--waist", waist, "beam waist, um");
    beam->add_option("--flatness", flat, "super-Gaussian exponent p");
    beam->add_option("--i0", i0, "peak intensity");
    beam->add_option("--at-x", bx, "probe x, um");
    beam->add_option("--at-y", by, "probe y, um");
    beam->add_option("--x0", bx0);
    beam->add_option("--y0", by0);
    beam->add_option("--csv", csv_beam, "write a radial profile curve");

    double dist = 13.5, dur = 300.0, omega = 2 * 3.14159265358979323846 * 0.051, xho = 0.027;
    std::string csv_tr;
    auto* transport = hw->add_subcommand("transport", "quintic transport and heating estimates");
    transport->add_option("--distance", dist, "um");
    transport->add_option("--duration", dur, "us");
    transport->add_option("--omega", omega, "trap angular frequency, rad/us");
    transport->add_option("--xho", xho, "harmonic oscillator length, um");
    transport->add_option("--csv", csv_tr, "write the trajectory curve");

    std::string rb_csv;
    int rb_dim = 4;
    auto* rbfit = hw->add_subcommand("rbfit", "fit A0 p^m + B0 to decay data");
    rbfit->add_option("--data", rb_csv, "CSV with m,population rows")->required();
    rbfit->add_option("--dim", rb_dim, "system dimension 2^n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
    }

    try {
        if (exact->parsed()) return cmd_exact(n_exact, v_exact);
        if (weights->parsed()) return cmd_weights(n_w, v_w, enc_w, csv_w);
        if (gray->parsed()) return cmd_graycode(width_g);
        if (vqe->parsed()) {
            // assemble the effective flat config: file first, flags override
            nlohmann::ordered_json j = nlohmann::ordered_json::object();
            if (!cfg_path.empty()) {
                std::ifstream in(cfg_path);
                if (!in) throw lmg::ConfigError("cannot open config file " + cfg_path);
                j = nlohmann::ordered_json::parse(in, nullptr, true);
            }
            if (run_n >= 0) j["N"] = run_n;
            if (run_v >= 0) j["V"] = run_v;
            if (!run_enc.empty()) j["encoding"] = run_enc;
            if (run_shots >= 0) j["shots"] = run_shots;
            if (run_seed >= 0) j["seed"] = run_seed;
            if (!run_noise.empty()) j["noise"] = run_noise;
            if (!run_opt.empty()) j["optimizer"] = run_opt;
            if (run_iters >= 0) j["max_iters"] = run_iters;
            if (run_exact) j["exact_expectations"] = true;
            if (!run_zne.empty()) j["zne"] = run_zne;
            if (run_threads > 0) j["threads"] = run_threads;
            if (!run_out.empty()) j["output_dir"] = run_out;
            if (!run_init.empty()) {
                if (run_init == "zeros" || run_init == "random" || run_init == "optimal") {
                    j["init"] = run_init;
                } else {
                    std::vector<double> angles;
                    std::istringstream is(run_init);
                    std::string tok;
                    while (std::getline(is, tok, ',')) angles.push_back(std::stod(tok));
                    j["init"] = angles;
                }
            }
            const auto cfg = lmg::ExperimentConfig::from_json_text(j.dump());
            const auto files = lmg::run_experiment_to_files(
                cfg, emit_circuit.empty() ? std::nullopt
                                          : std::optional<std::string>(emit_circuit));
            for (const auto& f : files) std::cout << "wrote " << f << "\n";
            return 0;
        }
        if (zne->parsed())
            return cmd_zne(n_z, v_z, method_z, ins_z, shots_z, seed_z, noise_z, theta_z, plain_z,
                           csv_z, json_z);
        if (hw->parsed()) {
            if (beam->parsed()) return cmd_beam(waist, flat, i0, bx, by, bx0, by0, csv_beam);
            if (transport->parsed()) return cmd_transport(dist, dur, omega, xho, csv_tr);
            if (rbfit->parsed()) return cmd_rbfit(rb_csv, rb_dim);
        }
    } catch (const lmg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
