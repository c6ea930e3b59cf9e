#pragma once

#include "pauli.hpp"

namespace lmg {

// LMG Hamiltonian with each spin on its own qubit (dimensionless units,
// epsilon = 1):
//
//   H = sum_p (1/2) Z^(p) + (V/2) sum_{p<q} ( X^(p) X^(q) - Y^(p) Y^(q) )
//
// Stored normalization: one term per unordered pair with weight V/2. This is
// the normalization whose maximal-J sector reproduces the Gray-encoded block
// (and the Table 1 energies); summing ordered pairs at V/2 would double the
// interaction. Terms with |weight| <= 1e-12 are dropped (e.g. V = 0 keeps
// only the Z terms).
PauliHamiltonian build_individual_hamiltonian(int particles, double coupling);

// Gray-encoded Hamiltonian embedded in 2^qubit_count(N) dimensions: diagonal
// a_k = 2k - J on codeword g_k, off-diagonal b_k = -(V/2) F(M = 2k - J)
// between g_k and g_{k+1}, zero elsewhere. F(M) = sqrt([J(J+1) - M(M+1)]
// [J(J+1) - (M+1)(M+2)]).
DenseHamiltonian build_gray_hamiltonian(int particles, double coupling);

// The d x d tridiagonal block in Gray order (d = floor(N/2)+1); padded states
// are excluded so padding zeros never enter ground-energy reporting.
SymMatrix gray_block(int particles, double coupling);

// Lowest eigenvalue of the Gray block, Jacobi-diagonalized.
double exact_ground_energy(int particles, double coupling);

// Full spectrum of the Gray block, ascending.
std::vector<double> gray_spectrum(int particles, double coupling);

}  // namespace lmg
