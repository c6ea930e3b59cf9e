#include "circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace lmg {

void Circuit::push(const Gate& g) {
    auto check = [&](int q) {
        if (q < 0 || q >= width) throw std::invalid_argument("Circuit::push: qubit out of range");
    };
    if (g.kind == Gate::Kind::CZ) {
        check(g.q0);
        check(g.q1);
        if (g.q0 == g.q1) throw std::invalid_argument("Circuit::push: CZ needs distinct qubits");
    } else if (!(g.kind == Gate::Kind::Rphi && g.q0 == Gate::kGlobal)) {
        check(g.q0);
    }
    gates.push_back(g);
}

void Circuit::append(const Circuit& other) {
    if (other.width != width) throw std::invalid_argument("Circuit::append: width mismatch");
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

int Circuit::cz_count() const {
    int n = 0;
    for (const auto& g : gates) n += (g.kind == Gate::Kind::CZ);
    return n;
}

namespace {
const char* kind_name(Gate::Kind k) {
    switch (k) {
        case Gate::Kind::Ry: return "ry";
        case Gate::Kind::Rz: return "rz";
        case Gate::Kind::Rphi: return "rphi";
        case Gate::Kind::PauliX: return "x";
        case Gate::Kind::CZ: return "cz";
    }
    return "?";
}

Gate::Kind kind_from(const std::string& s) {
    if (s == "ry") return Gate::Kind::Ry;
    if (s == "rz") return Gate::Kind::Rz;
    if (s == "rphi") return Gate::Kind::Rphi;
    if (s == "x") return Gate::Kind::PauliX;
    if (s == "cz") return Gate::Kind::CZ;
    throw std::invalid_argument("Circuit::from_json: unknown gate kind " + s);
}
}  // namespace

std::string Circuit::to_json() const {
    nlohmann::ordered_json j;
    j["width"] = width;
    j["gates"] = nlohmann::ordered_json::array();
    for (const auto& g : gates) {
        nlohmann::ordered_json r;
        r["kind"] = kind_name(g.kind);
        if (g.kind == Gate::Kind::CZ) {
            r["qubits"] = {g.q0, g.q1};
        } else {
            r["qubits"] = {g.q0};
        }
        if (g.kind == Gate::Kind::Ry || g.kind == Gate::Kind::Rz || g.kind == Gate::Kind::Rphi)
            r["angle"] = g.angle;
        if (g.kind == Gate::Kind::Rphi) r["axis"] = g.axis;
        j["gates"].push_back(r);
    }
    return j.dump(2);
}

Circuit Circuit::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    Circuit c(j.at("width").get<int>());
    for (const auto& r : j.at("gates")) {
        const auto kind = kind_from(r.at("kind").get<std::string>());
        const auto qs = r.at("qubits").get<std::vector<int>>();
        Gate g;
        g.kind = kind;
        g.q0 = qs.at(0);
        if (kind == Gate::Kind::CZ) g.q1 = qs.at(1);
        if (r.contains("angle")) g.angle = r.at("angle").get<double>();
        if (r.contains("axis")) g.axis = r.at("axis").get<double>();
        c.push(g);
    }
    return c;
}

void append_cnot(Circuit& c, int control, int target) {
    c.push(Gate::ry(-std::numbers::pi / 2, target));
    c.push(Gate::cz(control, target));
    c.push(Gate::ry(std::numbers::pi / 2, target));
}

namespace {
// Echoed global rotation implementing a local Rphi(axis, angle) on `target`:
// global Rphi(axis, angle/2), Rz(pi) on spectators, global Rphi(axis, angle/2),
// Rz(pi) on spectators. Z Rphi(a, t) Z = Rphi(a, -t), so spectators see the
// identity up to global phase while the target accumulates the full rotation.
void emit_local_rphi(Circuit& out, double axis, double angle, int target) {
    out.push(Gate::rphi(axis, angle / 2, Gate::kGlobal));
    for (int q = 0; q < out.width; ++q)
        if (q != target) out.push(Gate::rz(std::numbers::pi, q));
    out.push(Gate::rphi(axis, angle / 2, Gate::kGlobal));
    for (int q = 0; q < out.width; ++q)
        if (q != target) out.push(Gate::rz(std::numbers::pi, q));
}
}  // namespace

Circuit lower_to_hardware_gates(const Circuit& c) {
    constexpr double pi = std::numbers::pi;
    Circuit out(c.width);
    for (const auto& g : c.gates) {
        switch (g.kind) {
            case Gate::Kind::CZ:
            case Gate::Kind::Rz:
                out.push(g);
                break;
            case Gate::Kind::Rphi:
                if (g.q0 == Gate::kGlobal) out.push(g);
                else emit_local_rphi(out, g.axis, g.angle, g.q0);
                break;
            case Gate::Kind::Ry:
                // Ry(t) = Rphi(pi/2, t)
                emit_local_rphi(out, pi / 2, g.angle, g.q0);
                break;
            case Gate::Kind::PauliX:
                // X = Rphi(0, pi) up to global phase
                emit_local_rphi(out, 0.0, pi, g.q0);
                break;
        }
    }
    return out;
}

}  // namespace lmg
