#pragma once

#include <string>
#include <vector>

namespace lmg {

// Gate set: local Ry/Rz, rotations about an axis in the x-y plane (Rphi, with
// qubit = kGlobal applying to every qubit), Pauli X, and CZ. Conventions:
// Ry(t) = exp(-i t Y / 2), Rz(t) = exp(-i t Z / 2),
// Rphi(axis, t) = exp(-i t (cos(axis) X + sin(axis) Y) / 2),
// CZ = diag(1, 1, 1, -1) on the pair subspace.
struct Gate {
    enum class Kind { Ry, Rz, Rphi, PauliX, CZ };
    static constexpr int kGlobal = -1;

    Kind kind = Kind::Ry;
    int q0 = 0;       // target; kGlobal for a global Rphi
    int q1 = -1;      // CZ partner
    double angle = 0.0;
    double axis = 0.0;  // Rphi axis angle from the x axis

    static Gate ry(double angle, int q) { return {Kind::Ry, q, -1, angle, 0.0}; }
    static Gate rz(double angle, int q) { return {Kind::Rz, q, -1, angle, 0.0}; }
    static Gate rphi(double axis, double angle, int q) { return {Kind::Rphi, q, -1, angle, axis}; }
    static Gate pauli_x(int q) { return {Kind::PauliX, q, -1, 0.0, 0.0}; }
    static Gate cz(int a, int b) { return {Kind::CZ, a, b, 0.0, 0.0}; }
};

struct Circuit {
    int width = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(int w) : width(w) {}

    void push(const Gate& g);
    void append(const Circuit& other);  // widths must match
    int cz_count() const;

    std::string to_json() const;
    static Circuit from_json(const std::string& text);
};

// CNOT(control -> target) in the native set:
// (I (x) Ry(pi/2)) CZ (I (x) Ry(-pi/2)), Ry(-pi/2) on the target first.
void append_cnot(Circuit& c, int control, int target);

// Compile to the hardware set {global Rphi, local Rz, CZ}. Local Ry/Rx become
// local Rz conjugations around echoed global Rphi half-rotations (spectator
// qubits get Rz(pi) between the halves, which cancels their net rotation).
// The lowered circuit prepares the same state up to global phase.
Circuit lower_to_hardware_gates(const Circuit& c);

}  // namespace lmg
