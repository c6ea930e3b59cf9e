#include "simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lmg {

namespace {
using cd = std::complex<double>;

void apply_single(StateVector& st, const cd u00, const cd u01, const cd u10, const cd u11, int q) {
    const int n = st.width;
    const std::size_t dim = st.amplitudes.size();
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & bit) continue;
        const cd a0 = st.amplitudes[base];
        const cd a1 = st.amplitudes[base | bit];
        st.amplitudes[base] = u00 * a0 + u01 * a1;
        st.amplitudes[base | bit] = u10 * a0 + u11 * a1;
    }
}

void apply_gate(StateVector& st, const Gate& g) {
    const int n = st.width;
    switch (g.kind) {
        case Gate::Kind::Ry: {
            const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            apply_single(st, c, -s, s, c, g.q0);
            break;
        }
        case Gate::Kind::Rz: {
            const cd e0 = std::polar(1.0, -g.angle / 2), e1 = std::polar(1.0, g.angle / 2);
            apply_single(st, e0, 0.0, 0.0, e1, g.q0);
            break;
        }
        case Gate::Kind::Rphi: {
            const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            const cd off = cd(0, -s) * std::polar(1.0, -g.axis);
            const cd off2 = cd(0, -s) * std::polar(1.0, g.axis);
            if (g.q0 == Gate::kGlobal) {
                for (int q = 0; q < n; ++q) apply_single(st, c, off, off2, c, q);
            } else {
                apply_single(st, c, off, off2, c, g.q0);
            }
            break;
        }
        case Gate::Kind::PauliX:
            apply_single(st, 0.0, 1.0, 1.0, 0.0, g.q0);
            break;
        case Gate::Kind::CZ: {
            const std::size_t b0 = std::size_t{1} << (n - 1 - g.q0);
            const std::size_t b1 = std::size_t{1} << (n - 1 - g.q1);
            for (std::size_t i = 0; i < st.amplitudes.size(); ++i)
                if ((i & b0) && (i & b1)) st.amplitudes[i] = -st.amplitudes[i];
            break;
        }
    }
}

// The 15 non-identity two-qubit Paulis as pairs of single-qubit ops.
constexpr char kPauliOps[4] = {'I', 'X', 'Y', 'Z'};

void apply_pauli_op(StateVector& st, char op, int q) {
    switch (op) {
        case 'I': break;
        case 'X': apply_single(st, 0.0, 1.0, 1.0, 0.0, q); break;
        case 'Y': apply_single(st, 0.0, cd(0, -1), cd(0, 1), 0.0, q); break;
        case 'Z': apply_single(st, 1.0, 0.0, 0.0, -1.0, q); break;
        default: throw std::invalid_argument("apply_pauli_op: bad op");
    }
}
}  // namespace

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

double state_fidelity(const StateVector& a, const StateVector& b) {
    if (a.width != b.width) throw std::invalid_argument("state_fidelity: width mismatch");
    cd ov = 0.0;
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
        ov += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    return std::norm(ov);
}

double fidelity_to_depolarizing_probability(double fidelity) {
    return (4.0 / 3.0) * (1.0 - fidelity);
}

double NoiseModel::injection_probability() const {
    if (cz_fidelity < 0.0 || cz_fidelity > 1.0 || spam_error < 0.0 || spam_error > 1.0)
        throw std::invalid_argument("NoiseModel: probabilities out of range");
    if (pauli_injection_override) return *pauli_injection_override;
    return fidelity_to_depolarizing_probability(cz_fidelity);
}

StateVector run_circuit(const Circuit& c) {
    StateVector st(c.width);
    return run_circuit(c, st);
}

StateVector run_circuit(const Circuit& c, const StateVector& input) {
    if (input.width != c.width) throw std::invalid_argument("run_circuit: width mismatch");
    StateVector st = input;
    for (const auto& g : c.gates) apply_gate(st, g);
    return st;
}

StateVector run_noisy_trajectory(const Circuit& c, const NoiseModel& noise, std::mt19937_64& rng) {
    const double p = noise.injection_probability();
    if (p <= 0.0) return run_circuit(c);
    StateVector st(c.width);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pick(1, 15);
    for (const auto& g : c.gates) {
        apply_gate(st, g);
        if (g.kind == Gate::Kind::CZ && unit(rng) < p) {
            const int code = pick(rng);
            apply_pauli_op(st, kPauliOps[code >> 2], g.q0);
            apply_pauli_op(st, kPauliOps[code & 3], g.q1);
        }
    }
    return st;
}

ShotRecord sample_bitstrings(const StateVector& state, long shots, const NoiseModel& noise,
                             std::mt19937_64& rng) {
    if (shots < 1) throw std::invalid_argument("sample_bitstrings: shots must be >= 1");
    const std::size_t dim = state.amplitudes.size();
    std::vector<double> cdf(dim);
    double acc = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        acc += std::norm(state.amplitudes[i]);
        cdf[i] = acc;
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ShotRecord rec;
    rec.width = state.width;
    rec.counts.assign(dim, 0);
    rec.shots = shots;
    for (long s = 0; s < shots; ++s) {
        const double r = unit(rng) * acc;
        std::size_t idx = std::size_t(std::lower_bound(cdf.begin(), cdf.end(), r) - cdf.begin());
        if (idx >= dim) idx = dim - 1;
        if (noise.spam_error > 0.0) {
            for (int q = 0; q < state.width; ++q)
                if (unit(rng) < noise.spam_error) idx ^= std::size_t{1} << (state.width - 1 - q);
        }
        ++rec.counts[idx];
    }
    return rec;
}

namespace {
std::string bitstring_of(std::size_t idx, int width) {
    std::string s(width, '0');
    for (int q = 0; q < width; ++q)
        if (idx & (std::size_t{1} << (width - 1 - q))) s[q] = '1';
    return s;
}
}  // namespace

std::map<std::string, long> ShotRecord::as_bitstring_map() const {
    std::map<std::string, long> m;
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i] > 0) m[bitstring_of(i, width)] = counts[i];
    return m;
}

std::string ShotRecord::to_json() const {
    nlohmann::ordered_json j;
    j["width"] = width;
    j["shots"] = shots;
    j["counts"] = nlohmann::ordered_json::object();
    for (const auto& [bits, n] : as_bitstring_map()) j["counts"][bits] = n;
    return j.dump(2);
}

std::string ShotRecord::to_csv() const {
    std::ostringstream os;
    os << "bitstring,count\n";
    for (const auto& [bits, n] : as_bitstring_map()) os << bits << "," << n << "\n";
    return os.str();
}

double pauli_expectation(const ShotRecord& rec, const PauliString& s) {
    if (rec.shots <= 0) throw std::invalid_argument("pauli_expectation: empty record");
    if (int(s.size()) != rec.width) throw std::invalid_argument("pauli_expectation: width mismatch");
    std::size_t mask = 0;
    for (int q = 0; q < rec.width; ++q)
        if (s[q] != 'I') mask |= std::size_t{1} << (rec.width - 1 - q);
    long acc = 0;
    for (std::size_t i = 0; i < rec.counts.size(); ++i) {
        if (rec.counts[i] == 0) continue;
        const bool odd = std::popcount(i & mask) & 1;
        acc += odd ? -rec.counts[i] : rec.counts[i];
    }
    return double(acc) / double(rec.shots);
}

double exact_parity_expectation(const StateVector& state, const PauliString& s) {
    if (int(s.size()) != state.width)
        throw std::invalid_argument("exact_parity_expectation: width mismatch");
    std::size_t mask = 0;
    for (int q = 0; q < state.width; ++q)
        if (s[q] != 'I') mask |= std::size_t{1} << (state.width - 1 - q);
    double acc = 0.0;
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        const double pr = std::norm(state.amplitudes[i]);
        acc += (std::popcount(i & mask) & 1) ? -pr : pr;
    }
    return acc;
}

}  // namespace lmg
