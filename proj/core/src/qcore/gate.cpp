#include "qpoker/qcore/gate.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace qpoker {
namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 12> kGateNames{{
    {GateKind::X, "X"},
    {GateKind::Z, "Z"},
    {GateKind::H, "H"},
    {GateKind::CX, "CX"},
    {GateKind::U1, "U1"},
    {GateKind::U2, "U2"},
    {GateKind::U3, "U3"},
    {GateKind::SWAP, "SWAP"},
    {GateKind::PauliI, "PauliI"},
    {GateKind::PauliX, "PauliX"},
    {GateKind::PauliY, "PauliY"},
    {GateKind::PauliZ, "PauliZ"},
}};

constexpr std::array<std::pair<Provenance, std::string_view>, 5> kTagNames{{
    {Provenance::none, "none"},
    {Provenance::community, "community"},
    {Provenance::player, "player"},
    {Provenance::twirl, "twirl"},
    {Provenance::noise, "noise"},
}};

}  // namespace

int arity(GateKind kind) noexcept {
    return (kind == GateKind::CX || kind == GateKind::SWAP) ? 2 : 1;
}

int param_count(GateKind kind) noexcept {
    switch (kind) {
        case GateKind::U1: return 1;
        case GateKind::U2: return 2;
        case GateKind::U3: return 3;
        default: return 0;
    }
}

bool is_pauli(GateKind kind) noexcept {
    return kind == GateKind::PauliI || kind == GateKind::PauliX || kind == GateKind::PauliY ||
           kind == GateKind::PauliZ;
}

std::string_view to_string(GateKind kind) noexcept {
    for (const auto& [k, name] : kGateNames) {
        if (k == kind) return name;
    }
    return "?";
}

std::optional<GateKind> parse_gate_kind(std::string_view name) noexcept {
    for (const auto& [k, n] : kGateNames) {
        if (n == name) return k;
    }
    return std::nullopt;
}

std::string_view to_string(Provenance tag) noexcept {
    for (const auto& [t, name] : kTagNames) {
        if (t == tag) return name;
    }
    return "none";
}

std::optional<Provenance> parse_provenance(std::string_view name) noexcept {
    for (const auto& [t, n] : kTagNames) {
        if (n == name) return t;
    }
    return std::nullopt;
}

void validate_gate(const Gate& gate, int num_qubits) {
    const auto kind_name = std::string(to_string(gate.kind));
    if (static_cast<int>(gate.targets.size()) != arity(gate.kind)) {
        throw std::invalid_argument("gate " + kind_name + " expects " + std::to_string(arity(gate.kind)) +
                                    " target(s)");
    }
    if (static_cast<int>(gate.params.size()) != param_count(gate.kind)) {
        throw std::invalid_argument("gate " + kind_name + " expects " + std::to_string(param_count(gate.kind)) +
                                    " parameter(s)");
    }
    for (int t : gate.targets) {
        if (t < 0 || t >= num_qubits) {
            throw std::invalid_argument("target out of range: " + std::to_string(t) + " on " +
                                        std::to_string(num_qubits) + " qubits");
        }
    }
    if (gate.targets.size() == 2 && gate.targets[0] == gate.targets[1]) {
        throw std::invalid_argument("duplicate targets for gate " + kind_name);
    }
    for (double p : gate.params) {
        if (!std::isfinite(p)) throw std::invalid_argument("non-finite gate parameter");
    }
}

Eigen::Matrix2cd u3_matrix(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    Eigen::Matrix2cd m;
    m << Complex(c, 0.0), -std::polar(s, lambda),
         std::polar(s, phi), std::polar(c, phi + lambda);
    return m;
}

Eigen::Matrix2cd single_qubit_matrix(const Gate& gate) {
    using std::numbers::sqrt2;
    const Complex i{0.0, 1.0};
    Eigen::Matrix2cd m;
    switch (gate.kind) {
        case GateKind::X:
        case GateKind::PauliX:
            m << 0, 1, 1, 0;
            return m;
        case GateKind::PauliY:
            m << 0, -i, i, 0;
            return m;
        case GateKind::Z:
        case GateKind::PauliZ:
            m << 1, 0, 0, -1;
            return m;
        case GateKind::PauliI:
            return Eigen::Matrix2cd::Identity();
        case GateKind::H:
            m << 1, 1, 1, -1;
            return m / sqrt2;
        case GateKind::U1:
            m << 1, 0, 0, std::polar(1.0, gate.params.at(0));
            return m;
        case GateKind::U2:
            return u3_matrix(std::numbers::pi / 2.0, gate.params.at(0), gate.params.at(1));
        case GateKind::U3:
            return u3_matrix(gate.params.at(0), gate.params.at(1), gate.params.at(2));
        case GateKind::CX:
        case GateKind::SWAP:
            break;
    }
    throw std::invalid_argument("gate " + std::string(to_string(gate.kind)) + " is not single-qubit");
}

Eigen::Matrix4cd two_qubit_matrix(GateKind kind) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    switch (kind) {
        case GateKind::CX:
            // control = bit 0, target = bit 1
            m(0, 0) = 1;
            m(2, 2) = 1;
            m(3, 1) = 1;
            m(1, 3) = 1;
            return m;
        case GateKind::SWAP:
            m(0, 0) = 1;
            m(1, 2) = 1;
            m(2, 1) = 1;
            m(3, 3) = 1;
            return m;
        default:
            break;
    }
    throw std::invalid_argument("gate " + std::string(to_string(kind)) + " is not two-qubit");
}

}  // namespace qpoker
