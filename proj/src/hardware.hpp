#pragma once

#include <vector>

#include "circuit.hpp"
#include "rng.hpp"
#include "simulator.hpp"

namespace lmg {

// Units are um, us, rad/us throughout; any conversion happens at the CLI.

struct BeamProfile {
    double peak_intensity = 1.0;  // arbitrary units
    double center_x = 0.0;        // um
    double center_y = 0.0;        // um
    double waist = 1.0;           // um
    double flatness = 2.0;        // p; p = 2 is a plain Gaussian

    void validate() const;
};

// I(x,y) = I0 exp(-2 [(x-x0)^2 + (y-y0)^2]^(p/2) / w^p)
double super_gaussian_intensity(const BeamProfile& beam, double x, double y);

// dI/dr at radial distance r from the beam center.
double super_gaussian_radial_derivative(const BeamProfile& beam, double r);

struct TransportSpec {
    double distance = 1.0;        // d, um
    double duration = 1.0;        // t_d, us
    double trap_frequency = 1.0;  // omega_0, rad/us
    double ho_length = 1.0;       // x_ho, um

    void validate() const;
};

struct TrajectoryPoint {
    double position = 0.0;
    double velocity = 0.0;
    double acceleration = 0.0;
};

// Minimal-jerk quintic x(t) = d [6 (t/td)^5 - 15 (t/td)^4 + 10 (t/td)^3],
// 0 <= t <= t_d, with zero velocity and acceleration at both ends.
TrajectoryPoint quintic_trajectory(const TransportSpec& spec, double t);

// 10 d / (sqrt(3) t_d^2)
double quintic_max_acceleration(const TransportSpec& spec);

struct HeatingEstimates {
    double dn_constant_jerk = 0.0;  // from t_cj = 2^(1/4) 3^(1/2) d^(1/2) / (dn^(1/4) x_ho^(1/2) w0)
    double dn_minimal_jerk = 0.0;   // from t_mj = 2^(1/2) 15^(1/3) d^(1/3) / (dn^(1/6) x_ho^(1/3) w0)
};

// Inverts the duration formulas for the mean vibrational-quantum
// increase at the spec's duration:
//   dn_cj = 18 d^2 / (t^4 x_ho^2 w0^4),  dn_mj = 1800 d^2 / (t^6 x_ho^2 w0^6)
HeatingEstimates heating_estimates(const TransportSpec& spec);

// The duration formulas themselves (round-trip inverses of the above).
double transport_time_constant_jerk(const TransportSpec& spec, double dn);
double transport_time_minimal_jerk(const TransportSpec& spec, double dn);

// x_ho = sqrt(hbar / (2 m omega0)), mass in kg, omega0 in rad/us, result um.
double harmonic_oscillator_length(double mass_kg, double omega0);
inline constexpr double kCesiumMassKg = 2.2069469e-25;

struct RbFit {
    double a0 = 0.0;
    double b0 = 0.0;
    double p = 0.0;          // depolarization parameter per gate
    double p_std_error = 0.0;
    double error_per_gate = 0.0;  // r_c = (d-1)(1-p)/d
    double fidelity = 0.0;        // 1 - r_c
};

// Nonlinear least squares of P(m) = A0 p^m + B0 (Levenberg-Marquardt),
// r_c from the caller-supplied system dimension d = 2^n. Needs >= 3 distinct
// sequence lengths; throws std::runtime_error with diagnostics when the fit
// does not converge.
RbFit rb_fit(const std::vector<double>& lengths, const std::vector<double>& populations,
             int dimension);

// Two-qubit symmetric interleaved RB circuit with `cz_pairs` blocks of
// [CZ, global X, CZ] separated by random global single-qubit Cliffords and
// closed by the global correction gate returning the ideal state to |00>.
Circuit interleaved_rb_circuit(int cz_pairs, std::mt19937_64& rng);

// Stark-shift Ramsey dephasing figure of merit f*tau for thermal atoms at
// `displacement` from the beam center: positions sampled from the thermal
// Gaussian of a trap with the given waist (um) and depth/temperature ratio,
// phase accumulation proportional to local beam intensity. Only the relative
// ordering between beam profiles is contractual: a p = 2.6 profile at the
// reference parameters (w = 8.6 um, 1.2 um / 600 uK trap at 15 uK, 1.25 um
// displacement) holds several times more fringes than a Gaussian. Reference
// values of roughly 83 vs 36 depend on integration details and are not
// asserted.
double ramsey_figure_of_merit(const BeamProfile& beam, double trap_waist, double trap_depth_uK,
                              double temperature_uK, double displacement, int samples,
                              std::mt19937_64& rng);

}  // namespace lmg
