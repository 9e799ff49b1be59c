#include "qpoker/qcore/state_vector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qpoker {
namespace {

void check_width(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count " + std::to_string(num_qubits) + " outside [1, " +
                                    std::to_string(kMaxQubits) + "]");
    }
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    check_width(num_qubits);
    amps_.assign(std::size_t{1} << num_qubits, Complex{});
    amps_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<Complex> amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {}

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
    StateVector s(num_qubits);
    if (index >= s.dim()) throw std::invalid_argument("basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(int num_qubits, std::vector<Complex> amps) {
    check_width(num_qubits);
    if (amps.size() != (std::size_t{1} << num_qubits)) {
        throw std::invalid_argument("amplitude vector has wrong dimension");
    }
    StateVector s(num_qubits, std::move(amps));
    if (std::abs(s.norm_squared() - 1.0) > 1e-10) throw std::invalid_argument("amplitudes are not normalized");
    return s;
}

double StateVector::norm_squared() const noexcept {
    double total = 0.0;
    for (const auto& a : amps_) total += std::norm(a);
    return total;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
    return p;
}

Eigen::VectorXcd StateVector::to_eigen() const {
    return Eigen::Map<const Eigen::VectorXcd>(amps_.data(), static_cast<Eigen::Index>(amps_.size()));
}

void StateVector::apply_single(const Eigen::Matrix2cd& m, int q) {
    const std::size_t bit = std::size_t{1} << q;
    const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) continue;
        const Complex a = amps_[i];
        const Complex b = amps_[i | bit];
        amps_[i] = m00 * a + m01 * b;
        amps_[i | bit] = m10 * a + m11 * b;
    }
}

void StateVector::apply_cx(int control, int target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
    }
}

void StateVector::apply_swap(int a, int b) {
    const std::size_t abit = std::size_t{1} << a;
    const std::size_t bbit = std::size_t{1} << b;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & abit) && !(i & bbit)) std::swap(amps_[i], amps_[(i & ~abit) | bbit]);
    }
}

void StateVector::apply(const Gate& gate) {
    validate_gate(gate, num_qubits_);
    switch (gate.kind) {
        case GateKind::PauliI:
            return;
        case GateKind::X:
        case GateKind::PauliX: {
            const std::size_t bit = std::size_t{1} << gate.targets[0];
            for (std::size_t i = 0; i < amps_.size(); ++i) {
                if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
            }
            return;
        }
        case GateKind::Z:
        case GateKind::PauliZ: {
            const std::size_t bit = std::size_t{1} << gate.targets[0];
            for (std::size_t i = 0; i < amps_.size(); ++i) {
                if (i & bit) amps_[i] = -amps_[i];
            }
            return;
        }
        case GateKind::CX:
            apply_cx(gate.targets[0], gate.targets[1]);
            return;
        case GateKind::SWAP:
            apply_swap(gate.targets[0], gate.targets[1]);
            return;
        default:
            apply_single(single_qubit_matrix(gate), gate.targets[0]);
            return;
    }
}

double StateVector::apply_operator_and_normalize(const Eigen::Matrix2cd& op, int qubit) {
    if (qubit < 0 || qubit >= num_qubits_) throw std::invalid_argument("qubit index out of range");
    apply_single(op, qubit);
    const double norm = norm_squared();
    if (norm <= 0.0) throw std::domain_error("operator annihilated the state");
    const double scale = 1.0 / std::sqrt(norm);
    for (auto& a : amps_) a *= scale;
    return norm;
}

StateVector apply_gate(StateVector state, const Gate& gate) {
    state.apply(gate);
    return state;
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("fidelity: width mismatch");
    Complex overlap{};
    for (std::size_t i = 0; i < a.dim(); ++i) overlap += std::conj(a[i]) * b[i];
    return std::abs(overlap);
}

double reduced_purity(const StateVector& state, int qubit) {
    if (qubit < 0 || qubit >= state.num_qubits()) {
        throw std::invalid_argument("qubit index out of range: " + std::to_string(qubit));
    }
    const std::size_t bit = std::size_t{1} << qubit;
    double p0 = 0.0;
    double p1 = 0.0;
    Complex coherence{};  // <0|rho|1>
    for (std::size_t i = 0; i < state.dim(); ++i) {
        if (i & bit) continue;
        const Complex a0 = state[i];
        const Complex a1 = state[i | bit];
        p0 += std::norm(a0);
        p1 += std::norm(a1);
        coherence += a0 * std::conj(a1);
    }
    return p0 * p0 + p1 * p1 + 2.0 * std::norm(coherence);
}

std::vector<double> marginal_one_probabilities(const StateVector& state) {
    std::vector<double> p(static_cast<std::size_t>(state.num_qubits()), 0.0);
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double w = std::norm(state[i]);
        for (int k = 0; k < state.num_qubits(); ++k) {
            if ((i >> k) & 1U) p[static_cast<std::size_t>(k)] += w;
        }
    }
    return p;
}

StateVector permute_qubits(const StateVector& state, std::span<const int> mapping) {
    const int n = state.num_qubits();
    if (static_cast<int>(mapping.size()) != n) throw std::invalid_argument("permutation width mismatch");
    std::vector<Complex> out(state.dim());
    for (std::size_t i = 0; i < state.dim(); ++i) {
        std::size_t j = 0;
        for (int k = 0; k < n; ++k) {
            if ((i >> k) & 1U) j |= std::size_t{1} << mapping[static_cast<std::size_t>(k)];
        }
        out[j] = state[i];
    }
    return StateVector::from_amplitudes(n, std::move(out));
}

}  // namespace qpoker
