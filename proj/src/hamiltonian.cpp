#include "hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

#include "graycode.hpp"

namespace lmg {

PauliHamiltonian build_individual_hamiltonian(int particles, double coupling) {
    if (particles < 2) throw std::invalid_argument("build_individual_hamiltonian: need N >= 2");
    PauliHamiltonian h;
    h.width = std::size_t(particles);
    for (int p = 0; p < particles; ++p) {
        PauliString s(particles, 'I');
        s[p] = 'Z';
        h.add(s, 0.5);
    }
    for (int p = 0; p < particles; ++p) {
        for (int q = p + 1; q < particles; ++q) {
            PauliString sx(particles, 'I'), sy(particles, 'I');
            sx[p] = sx[q] = 'X';
            sy[p] = sy[q] = 'Y';
            h.add(sx, coupling / 2.0);
            h.add(sy, -coupling / 2.0);
        }
    }
    return h;
}

SymMatrix gray_block(int particles, double coupling) {
    if (particles < 2) throw std::invalid_argument("gray_block: need N >= 2");
    const int d = particles / 2 + 1;
    const double j = particles / 2.0;
    SymMatrix t(d);
    for (int k = 0; k < d; ++k) t.at(k, k) = 2.0 * k - j;
    for (int k = 0; k + 1 < d; ++k) {
        const double m = 2.0 * k - j;
        const double f = std::sqrt((j * (j + 1) - m * (m + 1)) * (j * (j + 1) - (m + 1) * (m + 2)));
        t.at(k, k + 1) = t.at(k + 1, k) = -(coupling / 2.0) * f;
    }
    return t;
}

DenseHamiltonian build_gray_hamiltonian(int particles, double coupling) {
    const SymMatrix t = gray_block(particles, coupling);
    const int nu = qubit_count(particles);
    const auto gray = binary_reflected_gray(nu);
    const int d = int(t.n);
    DenseHamiltonian h(std::size_t(1) << nu);
    for (int k = 0; k < d; ++k) h.at(gray.codes[k], gray.codes[k]) = t.at(k, k);
    for (int k = 0; k + 1 < d; ++k) {
        h.at(gray.codes[k], gray.codes[k + 1]) = t.at(k, k + 1);
        h.at(gray.codes[k + 1], gray.codes[k]) = t.at(k, k + 1);
    }
    return h;
}

double exact_ground_energy(int particles, double coupling) {
    return lowest_eigenvalue(gray_block(particles, coupling));
}

std::vector<double> gray_spectrum(int particles, double coupling) {
    return jacobi_eigensolve(gray_block(particles, coupling), false).values;
}

}  // namespace lmg
