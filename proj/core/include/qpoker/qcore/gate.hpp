#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qpoker/qcore/types.hpp"

namespace qpoker {

enum class GateKind : std::uint8_t {
    X,
    Z,
    H,
    CX,
    U1,
    U2,
    U3,
    SWAP,
    PauliI,
    PauliX,
    PauliY,
    PauliZ,
};

// Where an op came from. Carried through transforms and serialization so
// that twirl and noise insertions stay identifiable in a circuit dump.
enum class Provenance : std::uint8_t { none, community, player, twirl, noise };

struct Gate {
    GateKind kind = GateKind::PauliI;
    std::vector<int> targets;
    std::vector<double> params;
    Provenance tag = Provenance::none;

    friend bool operator==(const Gate&, const Gate&) = default;

    static Gate x(int q) { return {GateKind::X, {q}, {}}; }
    static Gate z(int q) { return {GateKind::Z, {q}, {}}; }
    static Gate h(int q) { return {GateKind::H, {q}, {}}; }
    static Gate cx(int control, int target) { return {GateKind::CX, {control, target}, {}}; }
    static Gate swap(int a, int b) { return {GateKind::SWAP, {a, b}, {}}; }
    static Gate u1(int q, double lambda) { return {GateKind::U1, {q}, {lambda}}; }
    static Gate u2(int q, double phi, double lambda) { return {GateKind::U2, {q}, {phi, lambda}}; }
    static Gate u3(int q, double theta, double phi, double lambda) {
        return {GateKind::U3, {q}, {theta, phi, lambda}};
    }
};

int arity(GateKind kind) noexcept;
int param_count(GateKind kind) noexcept;
bool is_pauli(GateKind kind) noexcept;

std::string_view to_string(GateKind kind) noexcept;
std::optional<GateKind> parse_gate_kind(std::string_view name) noexcept;

std::string_view to_string(Provenance tag) noexcept;
std::optional<Provenance> parse_provenance(std::string_view name) noexcept;

// Throws std::invalid_argument when the gate's shape or targets do not fit a
// register of num_qubits ("target out of range", "duplicate targets").
void validate_gate(const Gate& gate, int num_qubits);

// U3(theta, phi, lambda) = [[cos(t/2), -e^{i l} sin(t/2)], [e^{i p} sin(t/2), e^{i(p+l)} cos(t/2)]]
Eigen::Matrix2cd u3_matrix(double theta, double phi, double lambda);

// 2x2 unitary of a single-qubit gate.
Eigen::Matrix2cd single_qubit_matrix(const Gate& gate);

// 4x4 unitary of a two-qubit gate. Basis index bit 0 is targets[0]
// (the CX control), bit 1 is targets[1].
Eigen::Matrix4cd two_qubit_matrix(GateKind kind);

}  // namespace qpoker
