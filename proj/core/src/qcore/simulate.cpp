#include "qpoker/qcore/simulate.hpp"

#include <stdexcept>

namespace qpoker {

StateVector run_circuit(const Circuit& circuit, StateVector init) {
    if (circuit.num_qubits() != init.num_qubits()) {
        throw std::invalid_argument("circuit width " + std::to_string(circuit.num_qubits()) +
                                    " does not match state width " + std::to_string(init.num_qubits()));
    }
    for (const auto& gate : circuit.ops()) init.apply(gate);
    return init;
}

StateVector run_circuit(const Circuit& circuit) { return run_circuit(circuit, StateVector(circuit.num_qubits())); }

Eigen::MatrixXcd circuit_unitary(const Circuit& circuit) {
    const std::size_t dim = std::size_t{1} << circuit.num_qubits();
    Eigen::MatrixXcd u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t c = 0; c < dim; ++c) {
        u.col(static_cast<Eigen::Index>(c)) = run_circuit(circuit, StateVector::basis(circuit.num_qubits(), c)).to_eigen();
    }
    return u;
}

bool equivalent_up_to_phase(const Circuit& a, const Circuit& b, double tol) {
    return fidelity(run_circuit(a), run_circuit(b)) >= 1.0 - tol;
}

}  // namespace qpoker
