#include "ansatz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "graycode.hpp"

namespace lmg {

int ansatz_angle_count(int particles, Encoding enc) {
    if (enc == Encoding::Individual) {
        if (particles != 3)
            throw std::invalid_argument("individual ansatz is defined for N = 3 only");
        return 1;
    }
    if (particles < 2) throw std::invalid_argument("ansatz_angle_count: need N >= 2");
    if (particles == 4) return 1;
    return particles / 2;
}

std::vector<double> gray_ansatz_block_amplitudes(int particles, const std::vector<double>& angles) {
    const int d = particles / 2 + 1;
    if (int(angles.size()) != ansatz_angle_count(particles, Encoding::Gray))
        throw std::invalid_argument("gray_ansatz: wrong angle count");
    for (double a : angles)
        if (!std::isfinite(a)) throw std::invalid_argument("gray_ansatz: non-finite angle");

    std::vector<double> c(d, 0.0);
    if (particles == 4) {
        const double t = angles[0];
        c[0] = std::cos(t) * std::cos(t);
        c[1] = -std::sin(2 * t) / std::numbers::sqrt2;
        c[2] = std::sin(t) * std::sin(t);
        return c;
    }
    double prod = 1.0;
    for (int k = 0; k + 1 < d; ++k) {
        c[k] = std::cos(angles[k]) * prod;
        prod *= std::sin(angles[k]);
    }
    c[d - 1] = prod;
    return c;
}

StateVector gray_ansatz(int particles, const std::vector<double>& angles) {
    const auto block = gray_ansatz_block_amplitudes(particles, angles);
    const int nu = qubit_count(particles);
    const auto gray = binary_reflected_gray(nu);
    StateVector st(nu);
    st.amplitudes.assign(st.amplitudes.size(), 0.0);
    for (std::size_t k = 0; k < block.size(); ++k) st.amplitudes[gray.codes[k]] = block[k];
    return st;
}

std::vector<double> angles_from_block_amplitudes(const std::vector<double>& block) {
    const int d = int(block.size());
    if (d < 2) throw std::invalid_argument("angles_from_block_amplitudes: need >= 2 components");
    std::vector<double> t(d - 1, 0.0);
    double prod = 1.0;
    for (int k = 0; k + 1 < d; ++k) {
        double tail = 0.0;
        for (int j = k + 1; j < d; ++j) tail += block[j] * block[j];
        tail = std::sqrt(tail);
        if (std::abs(prod) < 1e-300) break;  // remaining angles are free
        t[k] = std::atan2(tail / std::abs(prod), block[k] / prod);
        if (prod < 0) t[k] = -t[k];  // keep sin(t_k)*prod >= 0 going forward
        prod *= std::sin(t[k]);
    }
    // match the sign of the final amplitude by flipping the last angle
    if (std::abs(block[d - 1]) > 1e-12 && prod * block[d - 1] < 0) t[d - 2] = -t[d - 2];
    return t;
}

IndividualN3 individual_ansatz_n3(double theta) {
    IndividualN3 out;
    out.state = StateVector(3);
    out.state.amplitudes.assign(8, 0.0);
    out.state.amplitudes[0b111] = std::cos(theta);
    const double w = -std::sin(theta) / std::sqrt(3.0);
    out.state.amplitudes[0b001] = w;
    out.state.amplitudes[0b010] = w;
    out.state.amplitudes[0b100] = w;
    out.alpha = 2.0 * std::acos(-std::sqrt(2.0 / 3.0) * std::sin(theta));
    out.beta = -std::numbers::pi / 4 - std::atan(std::tan(theta) / std::sqrt(3.0));
    return out;
}

Circuit individual_n3_circuit(double theta) {
    constexpr double pi = std::numbers::pi;
    // The alpha/beta parametrization covers |theta| <= pi/2; the trial state
    // repeats up to global sign with period pi, so reduce first.
    theta = std::remainder(theta, pi);
    const auto [state, alpha, beta] = individual_ansatz_n3(theta);
    (void)state;
    Circuit c(3);
    c.push(Gate::ry(alpha, 0));
    c.push(Gate::ry(-beta, 1));
    c.push(Gate::ry(pi / 2, 2));
    c.push(Gate::cz(0, 1));
    c.push(Gate::ry(pi / 2 + beta, 1));
    c.push(Gate::cz(1, 2));
    c.push(Gate::ry(-pi / 2, 1));
    c.push(Gate::cz(0, 1));
    c.push(Gate::ry(pi / 2, 1));
    c.push(Gate::ry(pi / 2, 2));
    return c;
}

Circuit basis_rotation_suffix(const MeasurementGroup& group) {
    constexpr double pi = std::numbers::pi;
    Circuit c(int(group.basis.size()));
    for (int q = 0; q < c.width; ++q) {
        switch (group.basis[q]) {
            case 'Z': break;
            case 'X': c.push(Gate::ry(-pi / 2, q)); break;
            case 'Y': c.push(Gate::rphi(0.0, pi / 2, q)); break;
            default: throw std::invalid_argument("basis_rotation_suffix: bad basis op");
        }
    }
    return c;
}

}  // namespace lmg
