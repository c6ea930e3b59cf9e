#include "synthesis.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "linalg.hpp"

namespace lmg {

namespace {
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

// ZYZ Euler angles: U = e^{i phase} Rz(alpha) Ry(beta) Rz(gamma) for U in U(2).
struct Zyz {
    double alpha, beta, gamma;
};

Zyz zyz_angles(const std::array<cd, 4>& u) {
    const cd det = u[0] * u[3] - u[1] * u[2];
    const cd ph = std::polar(1.0, -0.5 * std::arg(det));
    std::array<cd, 4> v{u[0] * ph, u[1] * ph, u[2] * ph, u[3] * ph};  // now in SU(2)
    Zyz z{};
    z.beta = 2.0 * std::atan2(std::abs(v[2]), std::abs(v[0]));
    if (std::abs(v[0]) > 1e-12 && std::abs(v[2]) > 1e-12) {
        const double apg = 2.0 * std::arg(v[3]);
        const double amg = 2.0 * std::arg(v[2]);
        z.alpha = (apg + amg) / 2;
        z.gamma = (apg - amg) / 2;
    } else if (std::abs(v[0]) > 1e-12) {
        z.alpha = 2.0 * std::arg(v[3]);
        z.gamma = 0.0;
    } else {
        z.alpha = 2.0 * std::arg(v[2]);
        z.gamma = 0.0;
    }
    return z;
}

void push_1q(Circuit& c, const std::array<cd, 4>& u, int q) {
    const Zyz z = zyz_angles(u);
    if (std::abs(z.gamma) > 1e-14) c.push(Gate::rz(z.gamma, q));
    if (std::abs(z.beta) > 1e-14) c.push(Gate::ry(z.beta, q));
    if (std::abs(z.alpha) > 1e-14) c.push(Gate::rz(z.alpha, q));
}

// Magic-like basis change: CNOT(0->1) (H (x) I) (S (x) S) as a 1-CZ circuit.
// Conjugating an SO(4) operator by this unitary yields a tensor product of
// single-qubit unitaries, which is the 2-CZ construction for unimodular
// two-qubit orthogonal gates.
Circuit magic_circuit() {
    Circuit c(2);
    c.push(Gate::rz(pi / 2, 0));  // S up to phase
    c.push(Gate::rz(pi / 2, 1));
    c.push(Gate::rz(pi, 0));      // H = Ry(pi/2) Z up to phase
    c.push(Gate::ry(pi / 2, 0));
    append_cnot(c, 0, 1);
    return c;
}

Circuit inverse_of(const Circuit& c) {
    Circuit inv(c.width);
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        Gate g = *it;
        if (g.kind != Gate::Kind::CZ && g.kind != Gate::Kind::PauliX) g.angle = -g.angle;
        inv.push(g);
    }
    return inv;
}

std::array<std::array<cd, 4>, 4> unitary_of(const Circuit& c) {
    std::array<std::array<cd, 4>, 4> u{};
    for (int col = 0; col < 4; ++col) {
        StateVector in(2);
        in.amplitudes.assign(4, 0.0);
        in.amplitudes[col] = 1.0;
        const StateVector out = run_circuit(c, in);
        for (int row = 0; row < 4; ++row) u[row][col] = out.amplitudes[row];
    }
    return u;
}

// Factor k = a (x) b (k unitary tensor product); rank-1 rearrangement.
void kron_factor(const std::array<std::array<cd, 4>, 4>& k, std::array<cd, 4>& a,
                 std::array<cd, 4>& b) {
    // r[(i,j)][(m,l)] = k[2i+m][2j+l] = a[i][j] * b[m][l]
    cd r[4][4];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int m = 0; m < 2; ++m)
                for (int l = 0; l < 2; ++l) r[2 * i + j][2 * m + l] = k[2 * i + m][2 * j + l];
    int ri = 0, ci = 0;
    double best = -1.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (std::abs(r[i][j]) > best) best = std::abs(r[i][j]), ri = i, ci = j;
    if (best < 1e-8) throw std::runtime_error("kron_factor: zero operator");
    for (int j = 0; j < 4; ++j) b[j] = r[ri][j];
    for (int i = 0; i < 4; ++i) a[i] = r[i][ci] / r[ri][ci];
    // rescale both factors to unitaries: a is s * U with |s| = ||a||_F / sqrt(2)
    double na = 0.0, nb = 0.0;
    for (int i = 0; i < 4; ++i) na += std::norm(a[i]), nb += std::norm(b[i]);
    const double sa = std::sqrt(na / 2.0), sb = std::sqrt(nb / 2.0);
    for (int i = 0; i < 4; ++i) a[i] /= sa, b[i] /= sb;
    // consistency: a (x) b must reproduce k up to the removed scale
    const cd scale = r[ri][ci] / (a[ri / 2 * 2 + ri % 2] * b[ci / 2 * 2 + ci % 2]);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int m = 0; m < 2; ++m)
                for (int l = 0; l < 2; ++l) {
                    const cd want = k[2 * i + m][2 * j + l];
                    const cd got = scale * a[2 * i + j] * b[2 * m + l];
                    if (std::abs(want - got) > 1e-9)
                        throw std::runtime_error("kron_factor: operator is not a tensor product");
                }
    // fold the residual scale (a pure phase for unitary k) into a
    for (int i = 0; i < 4; ++i) a[i] *= scale;
}

// Gates realizing the SO(4) operator w (columns w[.][k]) with exactly 2 CZ.
void append_so4(Circuit& out, const std::array<std::array<double, 4>, 4>& w, int q_hi, int q_lo) {
    const Circuit mc = magic_circuit();
    const auto uc = unitary_of(mc);
    // k = uc * w * uc^dagger
    std::array<std::array<cd, 4>, 4> tmp{}, k{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cd s = 0.0;
            for (int l = 0; l < 4; ++l) s += uc[i][l] * w[l][j];
            tmp[i][j] = s;
        }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cd s = 0.0;
            for (int l = 0; l < 4; ++l) s += tmp[i][l] * std::conj(uc[j][l]);
            k[i][j] = s;
        }
    std::array<cd, 4> a{}, b{};
    kron_factor(k, a, b);

    auto remap = [&](const Circuit& src) {
        for (const auto& g : src.gates) {
            Gate gg = g;
            gg.q0 = (g.q0 == 0) ? q_hi : q_lo;
            if (g.kind == Gate::Kind::CZ) gg.q1 = (g.q1 == 0) ? q_hi : q_lo;
            out.push(gg);
        }
    };
    remap(mc);
    Circuit locals(2);
    push_1q(locals, a, 0);
    push_1q(locals, b, 1);
    remap(locals);
    remap(inverse_of(mc));
}

std::vector<double> real_amplitudes(const StateVector& target) {
    std::vector<double> t;
    t.reserve(target.amplitudes.size());
    double norm = 0.0;
    for (const auto& a : target.amplitudes) {
        if (std::abs(a.imag()) > 1e-10)
            throw std::invalid_argument("synthesize_circuit: target must be real");
        t.push_back(a.real());
        norm += a.real() * a.real();
    }
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::invalid_argument("synthesize_circuit: target must be normalized");
    return t;
}
}  // namespace

Circuit synthesize_circuit(const StateVector& target) {
    const int n = target.width;
    if (n < 1 || n > 3) throw std::invalid_argument("synthesize_circuit: width must be 1..3");
    const auto t = real_amplitudes(target);
    Circuit c(n);

    if (n == 1) {
        c.push(Gate::ry(2.0 * std::atan2(t[1], t[0]), 0));
        return c;
    }

    const std::size_t cols = t.size() / 2;
    const Svd2xN svd = svd_2xn(t, cols);

    // det(u) = -1 is absorbed as u <- u Z with the Sigma-preparation angle
    // negated; the same rule as the two-qubit case, applied on the row side.
    double u[2][2] = {{svd.u[0][0], svd.u[0][1]}, {svd.u[1][0], svd.u[1][1]}};
    double sign = 1.0;
    if (u[0][0] * u[1][1] - u[0][1] * u[1][0] < 0) {
        u[0][1] = -u[0][1];
        u[1][1] = -u[1][1];
        sign = -sign;
    }

    if (n == 2) {
        auto v = svd.v;  // columns
        const double detv = v[0][0] * v[1][1] - v[0][1] * v[1][0];
        if (detv < 0) {
            v[1][0] = -v[1][0];
            v[1][1] = -v[1][1];
            sign = -sign;
        }
        c.push(Gate::ry(2.0 * std::atan2(sign * svd.s[1], svd.s[0]), 0));
        append_cnot(c, 0, 1);
        c.push(Gate::ry(2.0 * std::atan2(u[1][0], u[0][0]), 0));
        c.push(Gate::ry(2.0 * std::atan2(v[0][1], v[0][0]), 1));
        return c;
    }

    // n == 3: subsystem A = qubit 0, B = qubits 1,2. The CNOT targets the last
    // qubit so the Schmidt branches live on B-indices 0 and 1, matching the
    // first two columns of v. Swapping the two completion columns forces the
    // determinant positive without touching the state.
    auto v = svd.v;  // v[k] is column k
    double detv;
    {
        // 4x4 determinant of [v0 v1 v2 v3]
        auto det4 = [](const std::vector<std::vector<double>>& m) {
            double a[4][4];
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) a[i][j] = m[j][i];  // a[row][col]
            double det = 1.0;
            for (int col = 0; col < 4; ++col) {
                int piv = col;
                for (int r = col + 1; r < 4; ++r)
                    if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
                if (piv != col) {
                    for (int j = 0; j < 4; ++j) std::swap(a[col][j], a[piv][j]);
                    det = -det;
                }
                if (std::abs(a[col][col]) < 1e-14) return 0.0;
                det *= a[col][col];
                for (int r = col + 1; r < 4; ++r) {
                    const double f = a[r][col] / a[col][col];
                    for (int j = col; j < 4; ++j) a[r][j] -= f * a[col][j];
                }
            }
            return det;
        };
        detv = det4(v);
    }
    if (detv < 0) std::swap(v[2], v[3]);

    c.push(Gate::ry(2.0 * std::atan2(sign * svd.s[1], svd.s[0]), 0));
    append_cnot(c, 0, 2);
    c.push(Gate::ry(2.0 * std::atan2(u[1][0], u[0][0]), 0));
    std::array<std::array<double, 4>, 4> w{};
    for (int row = 0; row < 4; ++row)
        for (int col = 0; col < 4; ++col) w[row][col] = v[col][row];
    append_so4(c, w, 1, 2);
    return c;
}

}  // namespace lmg
