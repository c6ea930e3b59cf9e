#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "pauli.hpp"
#include "rng.hpp"

namespace lmg {

// Qubit 0 is the most significant bit of the amplitude index.
struct StateVector {
    int width = 0;
    std::vector<std::complex<double>> amplitudes;

    StateVector() = default;
    explicit StateVector(int w) : width(w), amplitudes(std::size_t{1} << w, 0.0) {
        amplitudes[0] = 1.0;
    }
    double norm() const;
};

// |<a|b>|^2, insensitive to global phase/sign.
double state_fidelity(const StateVector& a, const StateVector& b);

struct NoiseModel {
    double cz_fidelity = 1.0;   // average two-qubit gate fidelity
    double spam_error = 0.0;    // per-qubit readout flip probability
    // Overrides the fidelity-derived Pauli injection probability when set.
    std::optional<double> pauli_injection_override;

    double injection_probability() const;
    bool noiseless_gates() const { return injection_probability() <= 0.0; }
};

// Depolarizing-parameter convention: an average gate fidelity F maps to the
// I/4-replacement probability p = (4/3)(1 - F) (d = 4). run_noisy_trajectory
// injects a uniformly random non-identity two-qubit Pauli with this
// probability after each CZ; that channel contracts every non-identity Pauli
// expectation by exactly 1 - 16 p / 15 per CZ and has average gate fidelity
// 1 - (4/5) p (a 16/15 bookkeeping offset from the nominal F).
double fidelity_to_depolarizing_probability(double fidelity);

// Exact unitary action of the circuit. Defaults to |0...0> input.
StateVector run_circuit(const Circuit& c);
StateVector run_circuit(const Circuit& c, const StateVector& input);

// One stochastic sample: each CZ is followed, with the injection probability,
// by a uniformly random non-identity two-qubit Pauli on the gate's pair.
// With cz_fidelity = 1 (and no override) this is bit-for-bit run_circuit.
StateVector run_noisy_trajectory(const Circuit& c, const NoiseModel& noise, std::mt19937_64& rng);

struct ShotRecord {
    int width = 0;
    std::vector<long> counts;  // indexed by basis state
    long shots = 0;

    std::map<std::string, long> as_bitstring_map() const;
    std::string to_json() const;
    std::string to_csv() const;  // bitstring,count
};

// Multinomial sampling from |amplitude|^2; each measured bit then flips
// independently with probability spam_error.
ShotRecord sample_bitstrings(const StateVector& state, long shots, const NoiseModel& noise,
                             std::mt19937_64& rng);

// Mean over shots of prod (-1)^bit over non-identity positions of `s`.
double pauli_expectation(const ShotRecord& counts, const PauliString& s);

// Exact expectation of a Z-basis parity (same parity rule, from probabilities).
double exact_parity_expectation(const StateVector& state, const PauliString& s);

}  // namespace lmg
