#include "qpoker/circuit/circuit.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace qpoker {

Circuit::Circuit(int num_qubits, std::string name) : num_qubits_(num_qubits), name_(std::move(name)) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("circuit width " + std::to_string(num_qubits) + " outside [1, " +
                                    std::to_string(kMaxQubits) + "]");
    }
}

Circuit::Circuit(int num_qubits, std::initializer_list<Gate> ops) : Circuit(num_qubits) {
    for (const auto& g : ops) append(g);
}

Circuit& Circuit::append(Gate gate) {
    validate_gate(gate, num_qubits_);
    ops_.push_back(std::move(gate));
    return *this;
}

Circuit& Circuit::append(const Circuit& other) {
    if (other.num_qubits_ != num_qubits_) throw std::invalid_argument("cannot append circuits of different width");
    ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
    return *this;
}

Circuit compose(const Circuit& first, const Circuit& second) {
    Circuit out = first;
    out.append(second);
    return out;
}

std::vector<int> asap_layers(const Circuit& circuit) {
    std::vector<int> wire_level(static_cast<std::size_t>(circuit.num_qubits()), 0);
    std::vector<int> layers;
    layers.reserve(circuit.size());
    for (const auto& gate : circuit.ops()) {
        int level = 0;
        for (int t : gate.targets) level = std::max(level, wire_level[static_cast<std::size_t>(t)]);
        for (int t : gate.targets) wire_level[static_cast<std::size_t>(t)] = level + 1;
        layers.push_back(level);
    }
    return layers;
}

int depth(const Circuit& circuit) {
    const auto layers = asap_layers(circuit);
    int d = 0;
    for (int l : layers) d = std::max(d, l + 1);
    return d;
}

int count_cx(const Circuit& circuit) {
    int total = 0;
    for (const auto& gate : circuit.ops()) {
        if (gate.kind == GateKind::CX) total += 1;
        else if (gate.kind == GateKind::SWAP) total += 3;
    }
    return total;
}

Gate inverse(const Gate& gate) {
    Gate inv = gate;
    switch (gate.kind) {
        case GateKind::U1:
            inv.params = {-gate.params[0]};
            break;
        case GateKind::U2:
            // U2(phi, lambda)^dagger = U2(-lambda - pi, pi - phi)
            inv.params = {-gate.params[1] - std::numbers::pi, std::numbers::pi - gate.params[0]};
            break;
        case GateKind::U3:
            // U3(theta, phi, lambda)^dagger = U3(-theta, -lambda, -phi)
            inv.params = {-gate.params[0], -gate.params[2], -gate.params[1]};
            break;
        default:
            break;  // every other kind is self-inverse
    }
    return inv;
}

Circuit inverse(const Circuit& circuit) {
    Circuit out(circuit.num_qubits(), circuit.name());
    for (auto it = circuit.ops().rbegin(); it != circuit.ops().rend(); ++it) out.append(inverse(*it));
    return out;
}

Circuit with_tag(const Circuit& circuit, Provenance tag) {
    Circuit out(circuit.num_qubits(), circuit.name());
    for (Gate g : circuit.ops()) {
        g.tag = tag;
        out.append(std::move(g));
    }
    return out;
}

}  // namespace qpoker
