#pragma once

#include <vector>

#include "circuit.hpp"
#include "pauli.hpp"
#include "simulator.hpp"

namespace lmg {

// Trial-state family. Gray encoding takes floor(N/2) angles (N = 4 is the
// one-angle special case); the individual encoding is the N = 3
// single-angle circuit.
struct AnsatzSpec {
    int particles = 2;
    Encoding encoding = Encoding::Gray;
    std::vector<double> angles;
};

int ansatz_angle_count(int particles, Encoding enc);

// Amplitude on |g_k> is cos(theta_{k+1}) prod_{l<k} sin(theta_{l+1}) for
// k < floor(J), and the full sine product on |g_{floor(J)}>. Padded basis
// states are zero; the state is normalized by construction. N = 4 uses
// (cos^2 t, -sin(2t)/sqrt(2), sin^2 t) on (g_0, g_1, g_2).
StateVector gray_ansatz(int particles, const std::vector<double>& angles);

// Amplitudes on the d = floor(N/2)+1 gray-ordered states (no padding).
std::vector<double> gray_ansatz_block_amplitudes(int particles, const std::vector<double>& angles);

// Inverse of the hyperspherical parametrization: angles such that
// gray_ansatz reproduces `block` (unit norm, d = floor(N/2)+1 components).
std::vector<double> angles_from_block_amplitudes(const std::vector<double>& block);

// cos(t)|111> - (sin(t)/sqrt(3)) (|001> + |010> + |100>), plus the auxiliary
// circuit angles alpha = 2 arccos(-sqrt(2/3) sin t) and
// beta = -pi/4 - arctan(tan t / sqrt(3)).
struct IndividualN3 {
    StateVector state;
    double alpha = 0.0;
    double beta = 0.0;
};
IndividualN3 individual_ansatz_n3(double theta);

// The three-qubit preparation circuit for the individual encoding
// (its Ry/CZ network with the alpha/beta parametrization); prepares
// individual_ansatz_n3(theta).state up to global sign.
Circuit individual_n3_circuit(double theta);

// Per-qubit basis change before Z-basis readout: Ry(-pi/2) where the group
// basis is X, Rphi(0, pi/2) (an Rx) where it is Y, nothing where it is Z.
Circuit basis_rotation_suffix(const MeasurementGroup& group);

}  // namespace lmg
