#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qpoker/qcore/gate.hpp"

namespace qpoker {

// Ordered gate list on a fixed-width register.
class Circuit {
public:
    explicit Circuit(int num_qubits, std::string name = {});
    Circuit(int num_qubits, std::initializer_list<Gate> ops);

    int num_qubits() const noexcept { return num_qubits_; }
    const std::string& name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    std::span<const Gate> ops() const noexcept { return ops_; }
    std::size_t size() const noexcept { return ops_.size(); }
    bool empty() const noexcept { return ops_.empty(); }
    const Gate& operator[](std::size_t i) const { return ops_[i]; }

    // Validates targets against the register width.
    Circuit& append(Gate gate);
    Circuit& append(const Circuit& other);

    friend bool operator==(const Circuit&, const Circuit&) = default;

private:
    int num_qubits_;
    std::string name_;
    std::vector<Gate> ops_;
};

// Gates of `first` followed by gates of `second`; widths must match.
Circuit compose(const Circuit& first, const Circuit& second);

// Longest input-output path, every gate one layer (as-soon-as-possible).
int depth(const Circuit& circuit);

// As-soon-as-possible layer index (0-based) of every op.
std::vector<int> asap_layers(const Circuit& circuit);

// CX gates; a SWAP counts as the three CX it decomposes into.
int count_cx(const Circuit& circuit);

// Reversed order with each gate conjugated.
Circuit inverse(const Circuit& circuit);
Gate inverse(const Gate& gate);

// Copy of the circuit with every op re-tagged.
Circuit with_tag(const Circuit& circuit, Provenance tag);

}  // namespace qpoker
