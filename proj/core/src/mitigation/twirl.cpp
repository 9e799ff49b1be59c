#include "qpoker/mitigation/twirl.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qpoker/noisesim/noise.hpp"

namespace qpoker {

namespace {

constexpr int I = 0, X = 1, Y = 2, Z = 3;

void append_pauli(Circuit& out, int pauli, int qubit, Provenance tag) {
    if (pauli != I) out.append(Gate{pauli_gate_kind(pauli), {qubit}, {}, tag});
}

}  // namespace

const std::array<TwirlRow, 16>& twirl_table() {
    static const std::array<TwirlRow, 16> table{{
        {I, I, I, I}, {I, X, I, X}, {I, Y, Z, Y}, {I, Z, Z, Z},
        {X, I, X, X}, {X, X, X, I}, {X, Y, Y, Z}, {X, Z, Y, Y},
        {Y, I, Y, X}, {Y, X, Y, I}, {Y, Y, X, Z}, {Y, Z, X, Y},
        {Z, I, Z, I}, {Z, X, Z, X}, {Z, Y, I, Y}, {Z, Z, I, Z},
    }};
    return table;
}

Eigen::Matrix2cd pauli_matrix(int index) {
    using namespace std::complex_literals;
    Eigen::Matrix2cd m;
    switch (index) {
        case I: m << 1, 0, 0, 1; break;
        case X: m << 0, 1, 1, 0; break;
        case Y: m << 0, -1i, 1i, 0; break;
        case Z: m << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("Pauli index " + std::to_string(index) + " outside 0..3");
    }
    return m;
}

Eigen::Matrix4cd pauli_pair_matrix(int on_control, int on_target) {
    const Eigen::Matrix2cd t = pauli_matrix(on_target);
    const Eigen::Matrix2cd c = pauli_matrix(on_control);
    Eigen::Matrix4cd m;
    for (int r = 0; r < 4; ++r) {
        for (int col = 0; col < 4; ++col) m(r, col) = t(r >> 1, col >> 1) * c(r & 1, col & 1);
    }
    return m;
}

Eigen::Matrix4cd cx_matrix() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = 1;
    m(2, 2) = 1;
    m(3, 1) = 1;
    m(1, 3) = 1;
    return m;
}

TwirlCheck verify_twirl_row(const TwirlRow& row, double tolerance) {
    const Eigen::Matrix4cd cx = cx_matrix();
    const Eigen::Matrix4cd conjugated = cx * pauli_pair_matrix(row.a, row.b) * cx.adjoint();
    const Eigen::Matrix4cd expected = pauli_pair_matrix(row.c, row.d);

    Eigen::Index r = 0, c = 0;
    conjugated.cwiseAbs().maxCoeff(&r, &c);
    TwirlCheck check;
    if (std::abs(expected(r, c)) == 0.0) {
        check.max_error = (expected - conjugated).cwiseAbs().maxCoeff();
        return check;
    }
    const Complex ratio = expected(r, c) / conjugated(r, c);
    check.phase = std::arg(ratio);
    if (check.phase <= -std::numbers::pi) check.phase += 2 * std::numbers::pi;
    check.max_error = (expected - std::polar(1.0, check.phase) * conjugated).cwiseAbs().maxCoeff();
    check.ok = check.max_error <= tolerance;
    return check;
}

Circuit twirl_cx(const Circuit& circuit, Rng& rng) {
    Circuit out(circuit.num_qubits(), circuit.name());
    const auto& table = twirl_table();
    for (const auto& g : circuit.ops()) {
        if (g.kind != GateKind::CX) {
            out.append(g);
            continue;
        }
        const TwirlRow& row = table[uniform_below(rng, table.size())];
        const int control = g.targets[0];
        const int target = g.targets[1];
        append_pauli(out, row.a, control, Provenance::twirl);
        append_pauli(out, row.b, target, Provenance::twirl);
        out.append(g);
        append_pauli(out, row.c, control, Provenance::twirl);
        append_pauli(out, row.d, target, Provenance::twirl);
    }
    return out;
}

Circuit amplify_noise(const Circuit& circuit, const std::map<Edge, double>& eps, double r, Rng& rng) {
    if (!(r >= 1.0)) throw std::invalid_argument("amplification factor r must be >= 1");
    Circuit out(circuit.num_qubits(), circuit.name());
    for (const auto& g : circuit.ops()) {
        out.append(g);
        if (g.kind != GateKind::CX) continue;
        const auto it = eps.find(Edge::of(g.targets[0], g.targets[1]));
        const double p = it == eps.end() ? 0.0 : (r - 1.0) * it->second;
        if (p > 1.0) {
            throw std::invalid_argument("insertion probability (r-1)*eps = " + std::to_string(p) + " on edge " +
                                        edge_key(it->first) + " exceeds 1");
        }
        if (!bernoulli(rng, p)) continue;
        const PauliPairCode code = draw_nonidentity_pauli_pair(rng);
        append_pauli(out, code >> 2, g.targets[0], Provenance::noise);
        append_pauli(out, code & 3, g.targets[1], Provenance::noise);
    }
    return out;
}

Circuit amplify_noise(const Circuit& circuit, const DeviceModel& device, double r, Rng& rng) {
    return amplify_noise(circuit, device.cx_error, r, rng);
}

}  // namespace qpoker
