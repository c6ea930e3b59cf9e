#include "hardware.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lmg {

namespace {
constexpr double kHbar = 1.054571817e-28;  // kg um^2 / us
constexpr double pi = std::numbers::pi;
}  // namespace

void BeamProfile::validate() const {
    if (waist <= 0) throw std::invalid_argument("BeamProfile: waist must be positive");
    if (flatness < 1) throw std::invalid_argument("BeamProfile: flatness must be >= 1");
}

double super_gaussian_intensity(const BeamProfile& beam, double x, double y) {
    beam.validate();
    const double r2 = (x - beam.center_x) * (x - beam.center_x) +
                      (y - beam.center_y) * (y - beam.center_y);
    return beam.peak_intensity *
           std::exp(-2.0 * std::pow(r2, beam.flatness / 2.0) / std::pow(beam.waist, beam.flatness));
}

double super_gaussian_radial_derivative(const BeamProfile& beam, double r) {
    beam.validate();
    if (r < 0) throw std::invalid_argument("super_gaussian_radial_derivative: r must be >= 0");
    const double p = beam.flatness;
    const double wp = std::pow(beam.waist, p);
    const double val = beam.peak_intensity * std::exp(-2.0 * std::pow(r, p) / wp);
    if (r == 0.0) return p > 1 ? 0.0 : -2.0 * val / wp;
    return val * (-2.0 * p * std::pow(r, p - 1) / wp);
}

void TransportSpec::validate() const {
    if (distance <= 0 || duration <= 0 || trap_frequency <= 0 || ho_length <= 0)
        throw std::invalid_argument("TransportSpec: all parameters must be positive");
}

TrajectoryPoint quintic_trajectory(const TransportSpec& spec, double t) {
    spec.validate();
    if (t < 0 || t > spec.duration)
        throw std::invalid_argument("quintic_trajectory: t outside [0, t_d]");
    const double s = t / spec.duration;
    TrajectoryPoint out;
    out.position = spec.distance * (6 * s * s * s * s * s - 15 * s * s * s * s + 10 * s * s * s);
    out.velocity = spec.distance / spec.duration * (30 * s * s * s * s - 60 * s * s * s + 30 * s * s);
    out.acceleration =
        spec.distance / (spec.duration * spec.duration) * (120 * s * s * s - 180 * s * s + 60 * s);
    return out;
}

double quintic_max_acceleration(const TransportSpec& spec) {
    spec.validate();
    return 10.0 * spec.distance / (std::sqrt(3.0) * spec.duration * spec.duration);
}

HeatingEstimates heating_estimates(const TransportSpec& spec) {
    spec.validate();
    const double d2 = spec.distance * spec.distance;
    const double x2 = spec.ho_length * spec.ho_length;
    const double w = spec.trap_frequency;
    const double t = spec.duration;
    HeatingEstimates out;
    out.dn_constant_jerk = 18.0 * d2 / (std::pow(t, 4) * x2 * std::pow(w, 4));
    out.dn_minimal_jerk = 1800.0 * d2 / (std::pow(t, 6) * x2 * std::pow(w, 6));
    return out;
}

double transport_time_constant_jerk(const TransportSpec& spec, double dn) {
    spec.validate();
    if (dn <= 0) throw std::invalid_argument("transport_time_constant_jerk: dn must be positive");
    return std::pow(2.0, 0.25) * std::sqrt(3.0) * std::sqrt(spec.distance) /
           (std::pow(dn, 0.25) * std::sqrt(spec.ho_length) * spec.trap_frequency);
}

double transport_time_minimal_jerk(const TransportSpec& spec, double dn) {
    spec.validate();
    if (dn <= 0) throw std::invalid_argument("transport_time_minimal_jerk: dn must be positive");
    return std::sqrt(2.0) * std::cbrt(15.0) * std::cbrt(spec.distance) /
           (std::pow(dn, 1.0 / 6.0) * std::cbrt(spec.ho_length) * spec.trap_frequency);
}

double harmonic_oscillator_length(double mass_kg, double omega0) {
    if (mass_kg <= 0 || omega0 <= 0)
        throw std::invalid_argument("harmonic_oscillator_length: inputs must be positive");
    return std::sqrt(kHbar / (2.0 * mass_kg * omega0));
}

RbFit rb_fit(const std::vector<double>& lengths, const std::vector<double>& populations,
             int dimension) {
    if (lengths.size() != populations.size())
        throw std::invalid_argument("rb_fit: length/population size mismatch");
    if (std::set<double>(lengths.begin(), lengths.end()).size() < 3)
        throw std::invalid_argument("rb_fit: need >= 3 distinct sequence lengths");
    if (dimension < 2) throw std::invalid_argument("rb_fit: dimension must be >= 2");

    const std::size_t n = lengths.size();

    // A flat curve fits A = 0 with any p; resolve the degeneracy as no decay.
    double lo = populations.front(), hi = populations.front();
    for (double v : populations) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi - lo < 1e-12) {
        RbFit out;
        out.b0 = populations.front();
        out.p = 1.0;
        out.error_per_gate = 0.0;
        out.fidelity = 1.0;
        return out;
    }

    // initial guesses: B from the tail, A from the head, p from adjacent decay
    double b = populations.back();
    double a = populations.front() - b;
    if (std::abs(a) < 1e-6) a = 0.5;
    double p = 0.95;

    auto residuals = [&](double aa, double bb, double pp, std::vector<double>& r) {
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = populations[i] - (aa * std::pow(pp, lengths[i]) + bb);
            ss += r[i] * r[i];
        }
        return ss;
    };

    std::vector<double> r(n);
    double ss = residuals(a, b, p, r);
    double lambda = 1e-3;
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        // jacobian of the model
        double jtj[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        double jtr[3] = {0, 0, 0};
        for (std::size_t i = 0; i < n; ++i) {
            const double m = lengths[i];
            const double pm = std::pow(p, m);
            const double j0 = pm;                                  // d/dA
            const double j1 = 1.0;                                 // d/dB
            const double j2 = m > 0 ? a * m * std::pow(p, m - 1) : 0.0;  // d/dp
            const double jr[3] = {j0, j1, j2};
            for (int x = 0; x < 3; ++x) {
                for (int y = 0; y < 3; ++y) jtj[x][y] += jr[x] * jr[y];
                jtr[x] += jr[x] * r[i];
            }
        }
        // solve (JtJ + lambda diag) step = Jtr
        double m3[3][3];
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) m3[x][y] = jtj[x][y] + (x == y ? lambda * jtj[x][x] : 0.0);
        // gaussian elimination
        double rhs[3] = {jtr[0], jtr[1], jtr[2]};
        bool singular = false;
        for (int col = 0; col < 3 && !singular; ++col) {
            int piv = col;
            for (int row = col + 1; row < 3; ++row)
                if (std::abs(m3[row][col]) > std::abs(m3[piv][col])) piv = row;
            if (std::abs(m3[piv][col]) < 1e-18) {
                singular = true;
                break;
            }
            std::swap(m3[col], m3[piv]);
            std::swap(rhs[col], rhs[piv]);
            for (int row = col + 1; row < 3; ++row) {
                const double f = m3[row][col] / m3[col][col];
                for (int cc = col; cc < 3; ++cc) m3[row][cc] -= f * m3[col][cc];
                rhs[row] -= f * rhs[col];
            }
        }
        if (singular) {
            lambda *= 10;
            continue;
        }
        double step[3];
        for (int i = 2; i >= 0; --i) {
            double s = rhs[i];
            for (int j = i + 1; j < 3; ++j) s -= m3[i][j] * step[j];
            step[i] = s / m3[i][i];
        }
        const double na = a + step[0], nb = b + step[1];
        double np = p + step[2];
        np = std::clamp(np, 1e-6, 1.0);
        std::vector<double> nr(n);
        const double nss = residuals(na, nb, np, nr);
        if (nss < ss) {
            a = na;
            b = nb;
            p = np;
            r = nr;
            if (ss - nss < 1e-14 * (1.0 + ss)) {
                ss = nss;
                converged = true;
                break;
            }
            ss = nss;
            lambda = std::max(lambda * 0.3, 1e-12);
        } else {
            lambda *= 10;
            if (lambda > 1e12) break;
        }
    }
    if (!converged) {
        std::ostringstream os;
        os << "rb_fit: no convergence (ss=" << ss << ", a=" << a << ", b=" << b << ", p=" << p
           << ")";
        throw std::runtime_error(os.str());
    }

    RbFit out;
    out.a0 = a;
    out.b0 = b;
    out.p = p;
    // parameter covariance: sigma^2 (JtJ)^-1, sigma^2 = ss / (n - 3)
    {
        double jtj[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        for (std::size_t i = 0; i < n; ++i) {
            const double m = lengths[i];
            const double jr[3] = {std::pow(p, m), 1.0, m > 0 ? a * m * std::pow(p, m - 1) : 0.0};
            for (int x = 0; x < 3; ++x)
                for (int y = 0; y < 3; ++y) jtj[x][y] += jr[x] * jr[y];
        }
        // invert 3x3 via adjugate
        const double det = jtj[0][0] * (jtj[1][1] * jtj[2][2] - jtj[1][2] * jtj[2][1]) -
                           jtj[0][1] * (jtj[1][0] * jtj[2][2] - jtj[1][2] * jtj[2][0]) +
                           jtj[0][2] * (jtj[1][0] * jtj[2][1] - jtj[1][1] * jtj[2][0]);
        if (std::abs(det) > 1e-30 && n > 3) {
            const double inv22 =
                (jtj[0][0] * jtj[1][1] - jtj[0][1] * jtj[1][0]) / det;  // (2,2) cofactor entry
            const double sigma2 = ss / double(n - 3);
            out.p_std_error = std::sqrt(std::max(0.0, sigma2 * inv22));
        }
    }
    out.error_per_gate = (dimension - 1) * (1.0 - p) / double(dimension);
    out.fidelity = 1.0 - out.error_per_gate;
    return out;
}

namespace {
using cd = std::complex<double>;
using Mat2 = std::array<cd, 4>;  // row-major 2x2

Mat2 matmul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

// The 24 single-qubit Cliffords, built by closure over H and S with a
// canonical phase (first nonzero entry made real positive).
const std::vector<Mat2>& clifford_table() {
    static const std::vector<Mat2> table = [] {
        auto canon = [](Mat2 m) {
            for (const auto& e : m) {
                if (std::abs(e) > 1e-9) {
                    const cd ph = std::conj(e) / std::abs(e);
                    for (auto& x : m) x *= ph;
                    break;
                }
            }
            return m;
        };
        auto close_to = [](const Mat2& a, const Mat2& b) {
            for (int i = 0; i < 4; ++i)
                if (std::abs(a[i] - b[i]) > 1e-6) return false;
            return true;
        };
        const double is2 = 1.0 / std::numbers::sqrt2;
        const Mat2 h{is2, is2, is2, -is2};
        const Mat2 s{1.0, 0.0, 0.0, cd(0, 1)};
        std::vector<Mat2> found{canon(Mat2{1, 0, 0, 1})};
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<Mat2> more;
            for (const auto& m : found)
                for (const auto& g : {h, s}) {
                    const Mat2 cand = canon(matmul(g, m));
                    bool exists = false;
                    for (const auto& f : found)
                        if (close_to(f, cand)) {
                            exists = true;
                            break;
                        }
                    for (const auto& f : more)
                        if (close_to(f, cand)) {
                            exists = true;
                            break;
                        }
                    if (!exists) more.push_back(cand);
                }
            if (!more.empty()) {
                grew = true;
                found.insert(found.end(), more.begin(), more.end());
            }
        }
        return found;
    }();
    return table;
}

// ZYZ angles for a single-qubit unitary (same convention as the synthesizer).
std::array<double, 3> zyz_of(const Mat2& u) {
    const cd det = u[0] * u[3] - u[1] * u[2];
    const cd ph = std::polar(1.0, -0.5 * std::arg(det));
    const Mat2 v{u[0] * ph, u[1] * ph, u[2] * ph, u[3] * ph};
    const double beta = 2.0 * std::atan2(std::abs(v[2]), std::abs(v[0]));
    double alpha = 0.0, gamma = 0.0;
    if (std::abs(v[0]) > 1e-12 && std::abs(v[2]) > 1e-12) {
        const double apg = 2.0 * std::arg(v[3]);
        const double amg = 2.0 * std::arg(v[2]);
        alpha = (apg + amg) / 2;
        gamma = (apg - amg) / 2;
    } else if (std::abs(v[0]) > 1e-12) {
        alpha = 2.0 * std::arg(v[3]);
    } else {
        alpha = 2.0 * std::arg(v[2]);
    }
    return {alpha, beta, gamma};
}

void push_global_1q(Circuit& c, const Mat2& u) {
    const auto [alpha, beta, gamma] = zyz_of(u);
    for (int q = 0; q < c.width; ++q) {
        if (std::abs(gamma) > 1e-14) c.push(Gate::rz(gamma, q));
        if (std::abs(beta) > 1e-14) c.push(Gate::ry(beta, q));
        if (std::abs(alpha) > 1e-14) c.push(Gate::rz(alpha, q));
    }
}

Mat2 dagger(const Mat2& m) {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}
}  // namespace

Circuit interleaved_rb_circuit(int cz_pairs, std::mt19937_64& rng) {
    if (cz_pairs < 0) throw std::invalid_argument("interleaved_rb_circuit: cz_pairs must be >= 0");
    const auto& cliffords = clifford_table();
    std::uniform_int_distribution<std::size_t> pick(0, cliffords.size() - 1);

    Circuit c(2);
    // ideal per-qubit operator; CZ (X x X) CZ acts as Y on each qubit
    Mat2 ideal{1, 0, 0, 1};
    const Mat2 y{0.0, cd(0, -1), cd(0, 1), 0.0};
    for (int blk = 0; blk < cz_pairs; ++blk) {
        const Mat2& cl = cliffords[pick(rng)];
        push_global_1q(c, cl);
        ideal = matmul(cl, ideal);
        c.push(Gate::cz(0, 1));
        c.push(Gate::pauli_x(0));
        c.push(Gate::pauli_x(1));
        c.push(Gate::cz(0, 1));
        ideal = matmul(y, ideal);
    }
    const Mat2& last = cliffords[pick(rng)];
    push_global_1q(c, last);
    ideal = matmul(last, ideal);
    // final correction gate: undo the accumulated ideal rotation
    push_global_1q(c, dagger(ideal));
    return c;
}

double ramsey_figure_of_merit(const BeamProfile& beam, double trap_waist, double trap_depth_uK,
                              double temperature_uK, double displacement, int samples,
                              std::mt19937_64& rng) {
    beam.validate();
    if (trap_waist <= 0 || trap_depth_uK <= 0 || temperature_uK <= 0 || samples < 2)
        throw std::invalid_argument("ramsey_figure_of_merit: bad parameters");
    // thermal position spread in a Gaussian trap: sigma = (w/2) sqrt(T/U0)
    const double sigma = 0.5 * trap_waist * std::sqrt(temperature_uK / trap_depth_uK);
    std::normal_distribution<double> pos(0.0, sigma);

    // Stark shift proportional to local intensity; the proportionality scale
    // cancels in f*tau.
    std::vector<double> shifts(samples);
    double mean = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = beam.center_x + displacement + pos(rng);
        const double y = beam.center_y + pos(rng);
        shifts[i] = super_gaussian_intensity(beam, x, y);
        mean += shifts[i];
    }
    mean /= samples;

    // S(t) = |mean exp(i shift t)|, f = mean shift / 2pi, tau = first 1/e time
    const double f = mean / (2 * pi);
    double var = 0.0;
    for (double s : shifts) var += (s - mean) * (s - mean);
    var /= (samples - 1);
    const double sd = std::sqrt(var);
    if (sd < 1e-15) return std::numeric_limits<double>::infinity();
    const double t_step = 0.02 / sd;
    double tau = 0.0;
    for (int k = 1; k < 100000; ++k) {
        const double t = k * t_step;
        cd acc = 0.0;
        for (double s : shifts) acc += std::polar(1.0, s * t);
        const double coherence = std::abs(acc) / samples;
        if (coherence <= std::exp(-1.0)) {
            tau = t;
            break;
        }
    }
    if (tau == 0.0) throw std::runtime_error("ramsey_figure_of_merit: no 1/e crossing found");
    return f * tau;
}

}  // namespace lmg
