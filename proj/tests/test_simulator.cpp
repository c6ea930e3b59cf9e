#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "ansatz.hpp"
#include "graycode.hpp"
#include "hamiltonian.hpp"
#include "helpers.hpp"
#include "simulator.hpp"
#include "synthesis.hpp"
#include "vqe.hpp"

using namespace lmg;
using testutil::random_circuit;
using testutil::random_real_state;

namespace {
constexpr double pi = std::numbers::pi;
// Pauli-expectation contraction per noisy CZ for the uniform-Pauli injection
// channel with probability p.
double lambda_of(double p) { return 1.0 - 16.0 * p / 15.0; }
}  // namespace

TEST_CASE("empty circuit leaves the input unchanged") {
    std::mt19937_64 rng(1);
    const auto in = random_real_state(3, rng);
    const auto out = run_circuit(Circuit(3), in);
    for (std::size_t i = 0; i < in.amplitudes.size(); ++i)
        CHECK(out.amplitudes[i] == in.amplitudes[i]);
}

TEST_CASE("Ry(pi) flips |0> to |1> up to global phase") {
    Circuit c(1);
    c.push(Gate::ry(pi, 0));
    const auto st = run_circuit(c);
    CHECK(std::abs(st.amplitudes[1]) == doctest::Approx(1.0));
    CHECK(std::abs(st.amplitudes[0]) < 1e-15);
}

TEST_CASE("two-qubit circuit at the seven-spin optimum hits the exact energy") {
    const auto eig = jacobi_eigensolve(gray_block(7, 1.0), true);
    auto ground = eig.vectors.front();
    if (ground[0] < 0)
        for (double& x : ground) x = -x;
    const auto problem = VqeProblem::make(7, Encoding::Gray, 1.0);
    const auto est = problem.estimate(angles_from_block_amplitudes(ground), 0, NoiseModel{},
                                      RngStream(0));
    CHECK(std::abs(est.value - exact_ground_energy(7, 1.0)) < 1e-6);
    CHECK(std::abs(est.value - (-11.26)) < 0.01);  // -11.26 truncates -11.2657
}

TEST_CASE("unitarity fuzz: 1000 random circuits preserve the norm") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> nw(1, 3), ng(1, 50);
    for (int rep = 0; rep < 1000; ++rep) {
        const int w = nw(rng);
        const auto c = random_circuit(w, ng(rng), rng);
        CHECK(std::abs(run_circuit(c).norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("gate conventions: basis rotations map X and Y onto Z") {
    // state cos(t)|0> + sin(t)|1>: <X> = sin 2t, <Y> = 0, <Z> = cos 2t
    const double t = 0.37;
    Circuit prep(1);
    prep.push(Gate::ry(2 * t, 0));
    const auto st = run_circuit(prep);

    Circuit xrot = prep;
    xrot.push(Gate::ry(-pi / 2, 0));
    CHECK(exact_parity_expectation(run_circuit(xrot), "Z") ==
          doctest::Approx(std::sin(2 * t)).epsilon(1e-12));

    Circuit yrot = prep;
    yrot.push(Gate::rphi(0.0, pi / 2, 0));
    CHECK(exact_parity_expectation(run_circuit(yrot), "Z") == doctest::Approx(0.0).epsilon(1e-12));

    CHECK(exact_parity_expectation(st, "Z") == doctest::Approx(std::cos(2 * t)).epsilon(1e-12));
}

TEST_CASE("noiseless trajectories are bit-identical to the exact path") {
    std::mt19937_64 rng(13);
    const auto c = random_circuit(3, 20, rng);
    NoiseModel quiet{1.0, 0.0, std::nullopt};
    auto eng = RngStream(9).engine();
    const auto a = run_noisy_trajectory(c, quiet, eng);
    const auto b = run_circuit(c);
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) CHECK(a.amplitudes[i] == b.amplitudes[i]);
}

TEST_CASE("single-CZ depolarizing average matches the closed form") {
    // |++> through one noisy CZ: survivors are the X-type errors, so the mean
    // state fidelity is 1 - p + p * 3/15.
    NoiseModel noise{0.971, 0.0, std::nullopt};
    const double p = noise.injection_probability();
    CHECK(p == doctest::Approx((4.0 / 3.0) * 0.029).epsilon(1e-12));

    Circuit c(2);
    c.push(Gate::ry(pi / 2, 0));
    c.push(Gate::ry(pi / 2, 1));
    c.push(Gate::cz(0, 1));
    Circuit ideal_c = c;
    const auto ideal = run_circuit(ideal_c);

    const int n = 100000;
    auto eng = RngStream(41).engine();
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += state_fidelity(ideal, run_noisy_trajectory(c, noise, eng));
    mean /= n;
    const double expect = 1.0 - p + p * 3.0 / 15.0;
    const double sigma = std::sqrt(expect * (1 - expect) / n);
    CHECK(std::abs(mean - expect) < 3 * sigma + 1e-12);
}

TEST_CASE("folded-circuit deviation grows linearly in the CZ count at small p") {
    // base circuit: |++> then one CZ, whose <XZ> is exactly 1 (CZ maps X(x)I
    // to X(x)Z). Folding to r CZs keeps the ideal state and contracts <XZ>
    // by lambda^r.
    NoiseModel weak{1.0, 0.0, 0.004};
    const double lam = lambda_of(0.004);
    Circuit base(2);
    base.push(Gate::ry(pi / 2, 0));
    base.push(Gate::ry(pi / 2, 1));
    base.push(Gate::cz(0, 1));
    Circuit rotated = base;  // X-basis rotation on qubit 0, then Z-parity = <XZ>
    rotated.push(Gate::ry(-pi / 2, 0));
    CHECK(exact_parity_expectation(run_circuit(rotated), "XZ") == doctest::Approx(1.0));

    auto mean_xz = [&](int r, std::uint64_t seed) {
        Circuit c = base;
        for (int i = 1; i < r; ++i) c.push(Gate::cz(0, 1));
        c.push(Gate::ry(-pi / 2, 0));
        CHECK(state_fidelity(run_circuit(c), run_circuit(rotated)) ==
              doctest::Approx(1.0).epsilon(1e-12));
        auto eng = RngStream(seed).engine();
        const int n = 400000;
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            acc += exact_parity_expectation(run_noisy_trajectory(c, weak, eng), "XZ");
        return acc / n;
    };
    const double dev1 = 1.0 - mean_xz(1, 5);
    const double dev3 = 1.0 - mean_xz(3, 6);
    CHECK(std::abs(dev1 - (1 - lam)) < 8e-4);
    CHECK(std::abs(dev3 - (1 - lam * lam * lam)) < 8e-4);
    CHECK(dev3 / dev1 > 2.5);
    CHECK(dev3 / dev1 < 3.5);
}

TEST_CASE("trajectory averages converge to the depolarizing-channel expectation") {
    // depolarizing commutes with every unitary, so <P> contracts by
    // lambda^(number of CZs) for any traceless P regardless of interleaving
    std::mt19937_64 rng(3);
    NoiseModel noise{0.971, 0.0, std::nullopt};
    const double lam = lambda_of(noise.injection_probability());
    for (int rep = 0; rep < 3; ++rep) {
        const auto c = random_circuit(2, 12, rng);
        const auto ideal = run_circuit(c);
        const int ncz = c.cz_count();
        for (const PauliString& s : {PauliString("ZI"), PauliString("ZZ"), PauliString("XZ")}) {
            const double want = std::pow(lam, ncz) * exact_parity_expectation(ideal, s);
            auto eng = RngStream(100 + rep).engine();
            const int n = 20000;
            double acc = 0.0, acc2 = 0.0;
            for (int i = 0; i < n; ++i) {
                const double v = exact_parity_expectation(run_noisy_trajectory(c, noise, eng), s);
                acc += v;
                acc2 += v * v;
            }
            const double mean = acc / n;
            const double se = std::sqrt(std::max(1e-12, acc2 / n - mean * mean) / n);
            CHECK(std::abs(mean - want) < 3 * se + 1e-9);
        }
    }
}

TEST_CASE("sampling basics") {
    StateVector st(2);
    st.amplitudes = {0.0, 1.0, 0.0, 0.0};  // |01>
    NoiseModel quiet{1.0, 0.0, std::nullopt};
    auto eng = RngStream(2).engine();
    const auto rec = sample_bitstrings(st, 500, quiet, eng);
    CHECK(rec.counts[1] == 500);
    CHECK(rec.shots == 500);
    CHECK(rec.as_bitstring_map().at("01") == 500);
    CHECK_THROWS_AS(sample_bitstrings(st, 0, quiet, eng), std::invalid_argument);
}

TEST_CASE("binomial bound on the uniform superposition, 200 seeds") {
    Circuit c(1);
    c.push(Gate::ry(pi / 2, 0));
    const auto st = run_circuit(c);
    NoiseModel quiet{1.0, 0.0, std::nullopt};
    int ok = 0;
    for (int seed = 0; seed < 200; ++seed) {
        auto eng = RngStream(500 + seed).engine();
        const auto rec = sample_bitstrings(st, 400, quiet, eng);
        const double p0 = double(rec.counts[0]) / 400.0;
        if (std::abs(p0 - 0.5) <= 3 * std::sqrt(0.25 / 400)) ++ok;
    }
    CHECK(ok >= 194);  // 99.7% nominal; allow a small margin
}

TEST_CASE("spam flips appear at the configured rate") {
    StateVector st(1);  // |0>
    NoiseModel noise{1.0, 0.025, std::nullopt};
    auto eng = RngStream(77).engine();
    const long shots = 100000;
    const auto rec = sample_bitstrings(st, shots, noise, eng);
    const double frac = double(rec.counts[1]) / shots;
    const double sigma = std::sqrt(0.025 * 0.975 / shots);
    CHECK(std::abs(frac - 0.025) < 3 * sigma);
}

TEST_CASE("pauli_expectation arithmetic") {
    ShotRecord rec;
    rec.width = 2;
    rec.counts = {200, 0, 0, 200};
    rec.shots = 400;
    CHECK(pauli_expectation(rec, "II") == doctest::Approx(1.0));
    CHECK(pauli_expectation(rec, "ZZ") == doctest::Approx(1.0));

    ShotRecord zi;
    zi.width = 2;
    zi.counts = {300, 0, 100, 0};
    zi.shots = 400;
    CHECK(pauli_expectation(zi, "ZI") == doctest::Approx(0.5));
    ShotRecord empty;
    empty.width = 2;
    empty.counts = {0, 0, 0, 0};
    empty.shots = 0;
    CHECK_THROWS_AS(pauli_expectation(empty, "ZI"), std::invalid_argument);
}

TEST_CASE("seed determinism and substream independence") {
    std::mt19937_64 rng(19);
    const auto c = random_circuit(2, 10, rng);
    NoiseModel noise{0.971, 0.025, std::nullopt};
    auto run_once = [&](std::uint64_t seed) {
        auto eng = RngStream(seed).engine();
        const auto st = run_noisy_trajectory(c, noise, eng);
        return sample_bitstrings(st, 200, noise, eng).counts;
    };
    CHECK(run_once(4) == run_once(4));
    CHECK(run_once(4) != run_once(5));
    CHECK(RngStream(4).child(0).key != RngStream(4).child(1).key);
    CHECK(RngStream(4).child(1).key == RngStream(4).child(1).key);
}

TEST_CASE("noise model validation and mapping") {
    NoiseModel bad{1.2, 0.0, std::nullopt};
    CHECK_THROWS_AS(bad.injection_probability(), std::invalid_argument);
    CHECK(fidelity_to_depolarizing_probability(0.971) == doctest::Approx(0.0386666667));
    NoiseModel overridden{0.5, 0.0, 0.01};
    CHECK(overridden.injection_probability() == doctest::Approx(0.01));
}

TEST_CASE("hardware-gate lowering preserves the prepared state") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 60; ++rep) {
        const int w = 1 + int(rng() % 3);
        const auto c = random_circuit(w, 12, rng);
        const auto lowered = lower_to_hardware_gates(c);
        for (const auto& g : lowered.gates) {
            const bool ok = g.kind == Gate::Kind::CZ || g.kind == Gate::Kind::Rz ||
                            (g.kind == Gate::Kind::Rphi && g.q0 == Gate::kGlobal);
            CHECK(ok);
        }
        CHECK(state_fidelity(run_circuit(c), run_circuit(lowered)) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("circuit JSON round-trip") {
    std::mt19937_64 rng(37);
    const auto c = random_circuit(3, 25, rng);
    const auto back = Circuit::from_json(c.to_json());
    REQUIRE(back.gates.size() == c.gates.size());
    const auto a = run_circuit(c), b = run_circuit(back);
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
        CHECK(std::abs(a.amplitudes[i] - b.amplitudes[i]) < 1e-15);
}

TEST_CASE("shot record serialization") {
    ShotRecord rec;
    rec.width = 2;
    rec.counts = {3, 0, 1, 0};
    rec.shots = 4;
    CHECK(rec.to_csv() == "bitstring,count\n00,3\n10,1\n");
    CHECK(rec.to_json().find("\"00\": 3") != std::string::npos);
}
