#include "pauli.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace lmg {

namespace {
constexpr double kWeightThreshold = 1e-12;

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

std::size_t log2_exact(std::size_t x) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < x) ++n;
    return n;
}
}  // namespace

bool is_valid_pauli_string(const PauliString& s) {
    for (char c : s)
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') return false;
    return !s.empty();
}

int pauli_weight(const PauliString& s) {
    int w = 0;
    for (char c : s) w += (c != 'I');
    return w;
}

void PauliHamiltonian::add(const PauliString& s, double w) {
    if (s.size() != width) throw std::invalid_argument("PauliHamiltonian::add: width mismatch");
    if (!is_valid_pauli_string(s)) throw std::invalid_argument("PauliHamiltonian::add: bad op");
    double& slot = terms[s];
    slot += w;
    if (std::abs(slot) <= kWeightThreshold) terms.erase(s);
}

std::string PauliHamiltonian::to_json() const {
    nlohmann::ordered_json j;
    j["width"] = width;
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& [s, w] : terms) j["terms"].push_back({{"string", s}, {"weight", w}});
    return j.dump(2);
}

PauliHamiltonian PauliHamiltonian::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    PauliHamiltonian h;
    h.width = j.at("width").get<std::size_t>();
    for (const auto& t : j.at("terms"))
        h.add(t.at("string").get<std::string>(), t.at("weight").get<double>());
    return h;
}

SymMatrix DenseHamiltonian::as_sym() const {
    SymMatrix m(dim);
    m.a = entries;
    return m;
}

namespace {
// Apply single Pauli op to basis index bit; returns (new_bit_value, phase).
// phase is one of {1, -1, i, -i} encoded as complex.
inline void pauli_action(char op, int bit, int& out_bit, std::complex<double>& phase) {
    switch (op) {
        case 'I': out_bit = bit; break;
        case 'X': out_bit = 1 - bit; break;
        case 'Y':
            out_bit = 1 - bit;
            phase *= bit ? std::complex<double>(0, -1) : std::complex<double>(0, 1);
            break;
        case 'Z':
            out_bit = bit;
            if (bit) phase = -phase;
            break;
        default: throw std::invalid_argument("pauli_action: bad op");
    }
}
}  // namespace

std::vector<std::complex<double>> apply_pauli_hamiltonian(
    const PauliHamiltonian& h, const std::vector<std::complex<double>>& x) {
    const std::size_t n = h.width;
    const std::size_t dim = std::size_t{1} << n;
    if (x.size() != dim) throw std::invalid_argument("apply_pauli_hamiltonian: size mismatch");
    std::vector<std::complex<double>> y(dim, 0.0);
    for (const auto& [s, w] : h.terms) {
        for (std::size_t idx = 0; idx < dim; ++idx) {
            if (x[idx] == std::complex<double>(0.0)) continue;
            std::size_t out = 0;
            std::complex<double> phase = 1.0;
            for (std::size_t q = 0; q < n; ++q) {
                const int bit = (idx >> (n - 1 - q)) & 1;
                int ob;
                pauli_action(s[q], bit, ob, phase);
                out |= (std::size_t(ob) << (n - 1 - q));
            }
            y[out] += w * phase * x[idx];
        }
    }
    return y;
}

PauliHamiltonian pauli_decompose(const DenseHamiltonian& h) {
    if (!is_power_of_two(h.dim)) throw std::invalid_argument("pauli_decompose: dim must be a power of two");
    const std::size_t nu = log2_exact(h.dim);
    const std::size_t dim = h.dim;
    PauliHamiltonian out;
    out.width = nu;

    // Tr(H P) for real symmetric H: only strings with an even number of Y ops
    // can contribute, and the trace is real.
    std::vector<PauliString> strings;
    const char ops[4] = {'I', 'X', 'Y', 'Z'};
    std::vector<std::size_t> idx(nu, 0);
    for (std::size_t code = 0; code < (std::size_t{1} << (2 * nu)); ++code) {
        PauliString s(nu, 'I');
        for (std::size_t q = 0; q < nu; ++q) s[q] = ops[(code >> (2 * (nu - 1 - q))) & 3];
        strings.push_back(s);
    }
    for (const auto& s : strings) {
        std::complex<double> tr = 0.0;
        for (std::size_t col = 0; col < dim; ++col) {
            // row index and phase of P|col>
            std::size_t row = 0;
            std::complex<double> phase = 1.0;
            for (std::size_t q = 0; q < nu; ++q) {
                const int bit = (col >> (nu - 1 - q)) & 1;
                int ob;
                pauli_action(s[q], bit, ob, phase);
                row |= (std::size_t(ob) << (nu - 1 - q));
            }
            tr += h.at(row, col) * phase;
        }
        const std::complex<double> w = tr / double(dim);
        if (std::abs(w) > kWeightThreshold) {
            if (std::abs(w.imag()) > 1e-10)
                throw std::runtime_error("pauli_decompose: non-real weight for " + s);
            out.add(s, w.real());
        }
    }
    return out;
}

DenseHamiltonian reconstruct_dense(const PauliHamiltonian& h) {
    const std::size_t dim = std::size_t{1} << h.width;
    DenseHamiltonian out(dim);
    for (const auto& [s, w] : h.terms) {
        for (std::size_t col = 0; col < dim; ++col) {
            std::size_t row = 0;
            std::complex<double> phase = 1.0;
            for (std::size_t q = 0; q < h.width; ++q) {
                const int bit = (col >> (h.width - 1 - q)) & 1;
                int ob;
                pauli_action(s[q], bit, ob, phase);
                row |= (std::size_t(ob) << (h.width - 1 - q));
            }
            if (std::abs(phase.imag()) > 1e-14 && std::abs(w) > 0)
                throw std::runtime_error("reconstruct_dense: complex entry from " + s);
            out.at(row, col) += w * phase.real();
        }
    }
    return out;
}

std::vector<MeasurementGroup> measurement_groups(const PauliHamiltonian& h, Encoding enc) {
    const std::size_t n = h.width;
    std::vector<MeasurementGroup> groups;
    if (enc == Encoding::Individual) {
        MeasurementGroup gx{std::string(n, 'X'), {}};
        MeasurementGroup gy{std::string(n, 'Y'), {}};
        MeasurementGroup gz{std::string(n, 'Z'), {}};
        for (const auto& [s, w] : h.terms) {
            bool hasX = s.find('X') != std::string::npos;
            bool hasY = s.find('Y') != std::string::npos;
            bool hasZ = s.find('Z') != std::string::npos;
            if (int(hasX) + int(hasY) + int(hasZ) > 1)
                throw std::invalid_argument("measurement_groups: mixed-basis string " + s);
            if (hasX) gx.members.emplace_back(s, w);
            else if (hasY) gy.members.emplace_back(s, w);
            else gz.members.emplace_back(s, w);  // Z strings and the identity
        }
        groups.push_back(gz);
        groups.push_back(gx);
        groups.push_back(gy);
        return groups;
    }
    // Gray: all-Z group plus one group per qubit position holding the X.
    groups.push_back({std::string(n, 'Z'), {}});
    for (std::size_t q = 0; q < n; ++q) {
        std::string basis(n, 'Z');
        basis[q] = 'X';
        groups.push_back({basis, {}});
    }
    for (const auto& [s, w] : h.terms) {
        if (s.find('Y') != std::string::npos)
            throw std::invalid_argument("measurement_groups: Y op in Gray string " + s);
        const auto first = s.find('X');
        if (first == std::string::npos) {
            groups[0].members.emplace_back(s, w);
        } else {
            if (s.find('X', first + 1) != std::string::npos)
                throw std::invalid_argument("measurement_groups: multiple X in Gray string " + s);
            groups[1 + first].members.emplace_back(s, w);
        }
    }
    return groups;
}

}  // namespace lmg
