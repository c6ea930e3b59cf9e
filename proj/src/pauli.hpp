#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace lmg {

// Pauli strings are written most-significant qubit first: in "XZI" the X acts
// on qubit 0, which is the most significant bit of a basis-state index. Every
// module shares this convention.
using PauliString = std::string;

bool is_valid_pauli_string(const PauliString& s);
int pauli_weight(const PauliString& s);  // number of non-identity ops

// Weighted sum of Pauli strings with real coefficients. The LMG Hamiltonian is
// real symmetric in both encodings, so real weights are an invariant, not a
// restriction.
struct PauliHamiltonian {
    std::size_t width = 0;
    std::map<PauliString, double> terms;

    void add(const PauliString& s, double w);
    std::string to_json() const;
    static PauliHamiltonian from_json(const std::string& text);
};

struct DenseHamiltonian {
    std::size_t dim = 0;
    std::vector<double> entries;  // row-major, symmetric

    DenseHamiltonian() = default;
    explicit DenseHamiltonian(std::size_t d) : dim(d), entries(d * d, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
    double at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
    SymMatrix as_sym() const;
};

// Strings measurable after one shared basis rotation. basis[q] in {X,Y,Z};
// every member's non-identity ops agree with the basis at those positions.
struct MeasurementGroup {
    std::string basis;
    std::vector<std::pair<PauliString, double>> members;
};

enum class Encoding { Individual, Gray };

// a_i = Tr(H P_i) / dim, keeping |a_i| > 1e-12. dim must be a power of two.
PauliHamiltonian pauli_decompose(const DenseHamiltonian& h);

DenseHamiltonian reconstruct_dense(const PauliHamiltonian& h);

// y += P x for one Pauli string (complex phases from Y handled internally).
std::vector<std::complex<double>> apply_pauli_hamiltonian(
    const PauliHamiltonian& h, const std::vector<std::complex<double>>& x);

// Individual encoding: 3 groups (all-X, all-Y, all-Z). Gray encoding: width+1
// groups, all-Z plus one group per qubit position holding the single X.
// A Gray-mode string with a Y op or more than one X is a structural error.
std::vector<MeasurementGroup> measurement_groups(const PauliHamiltonian& h, Encoding enc);

}  // namespace lmg
