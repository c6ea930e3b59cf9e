#pragma once

#include "circuit.hpp"
#include "simulator.hpp"

namespace lmg {

// State preparation for real-amplitude targets of width 1..3 from |0...0>,
// via Schmidt decomposition of the target (qubit 0 against the rest).
// Gate budget: width 1 -> single Ry, no CZ; width 2 -> 1 CZ; width 3 -> 3 CZ
// (one Schmidt CNOT plus a two-CZ unimodular two-qubit orthogonal block).
// The prepared state matches the target up to global sign to ~1e-12.
// Non-real amplitudes or width > 3 are rejected.
Circuit synthesize_circuit(const StateVector& target);

}  // namespace lmg
