#pragma once

#include <complex>
#include <random>
#include <vector>

#include "circuit.hpp"
#include "pauli.hpp"
#include "simulator.hpp"

namespace testutil {

// <psi| H |psi> straight from the dense matrix; independent of the circuit
// and measurement-group paths it is used to check.
inline double dense_expectation(const lmg::DenseHamiltonian& h, const lmg::StateVector& psi) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < h.dim; ++i)
        for (std::size_t j = 0; j < h.dim; ++j)
            acc += std::conj(psi.amplitudes[i]) * h.at(i, j) * psi.amplitudes[j];
    return acc.real();
}

inline lmg::StateVector random_real_state(int width, std::mt19937_64& rng) {
    lmg::StateVector st(width);
    std::normal_distribution<double> g(0.0, 1.0);
    double norm = 0.0;
    for (auto& a : st.amplitudes) {
        a = g(rng);
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto& a : st.amplitudes) a /= norm;
    return st;
}

inline lmg::Circuit random_circuit(int width, int gates, std::mt19937_64& rng) {
    lmg::Circuit c(width);
    std::uniform_int_distribution<int> kind(0, width > 1 ? 4 : 3);
    std::uniform_int_distribution<int> qubit(0, width - 1);
    std::uniform_real_distribution<double> angle(-3.14159, 3.14159);
    for (int i = 0; i < gates; ++i) {
        switch (kind(rng)) {
            case 0: c.push(lmg::Gate::ry(angle(rng), qubit(rng))); break;
            case 1: c.push(lmg::Gate::rz(angle(rng), qubit(rng))); break;
            case 2: c.push(lmg::Gate::rphi(angle(rng), angle(rng), qubit(rng))); break;
            case 3: c.push(lmg::Gate::pauli_x(qubit(rng))); break;
            default: {
                int a = qubit(rng), b = qubit(rng);
                while (b == a) b = qubit(rng);
                c.push(lmg::Gate::cz(a, b));
            }
        }
    }
    return c;
}

}  // namespace testutil
