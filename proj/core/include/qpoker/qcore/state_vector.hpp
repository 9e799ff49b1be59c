#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

#include "qpoker/qcore/gate.hpp"
#include "qpoker/qcore/types.hpp"

namespace qpoker {

// Pure state over n qubits. Amplitude index bit k holds the value of qubit q_k.
class StateVector {
public:
    // |0...0> on num_qubits qubits.
    explicit StateVector(int num_qubits);

    static StateVector basis(int num_qubits, std::uint64_t index);
    // Takes ownership of the amplitudes; size must be 2^num_qubits and the norm 1.
    static StateVector from_amplitudes(int num_qubits, std::vector<Complex> amps);

    int num_qubits() const noexcept { return num_qubits_; }
    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }

    double norm_squared() const noexcept;
    std::vector<double> probabilities() const;
    Eigen::VectorXcd to_eigen() const;

    // In-place application; callers outside the simulator use apply_gate().
    void apply(const Gate& gate);

    // Applies a (possibly non-unitary) 2x2 operator to one qubit, then
    // renormalizes. Returns the squared norm before renormalization; used
    // for quantum-trajectory sampling of Kraus channels.
    double apply_operator_and_normalize(const Eigen::Matrix2cd& op, int qubit);

private:
    StateVector(int num_qubits, std::vector<Complex> amps);

    void apply_single(const Eigen::Matrix2cd& m, int q);
    void apply_cx(int control, int target);
    void apply_swap(int a, int b);

    int num_qubits_;
    std::vector<Complex> amps_;
};

// Returns U|psi>. Throws std::invalid_argument for bad targets.
StateVector apply_gate(StateVector state, const Gate& gate);

// |<a|b>|; global phase insensitive.
double fidelity(const StateVector& a, const StateVector& b);

// Tr(rho_q^2) of the single-qubit reduced density matrix; in [0.5, 1].
double reduced_purity(const StateVector& state, int qubit);

// P(q_k = 1) for every qubit.
std::vector<double> marginal_one_probabilities(const StateVector& state);

// Relabels qubits: logical qubit k of `state` lands on qubit mapping[k].
StateVector permute_qubits(const StateVector& state, std::span<const int> mapping);

}  // namespace qpoker
