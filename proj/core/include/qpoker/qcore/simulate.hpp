#pragma once

#include "qpoker/circuit/circuit.hpp"
#include "qpoker/qcore/state_vector.hpp"

namespace qpoker {

// Applies the circuit's gates in order. Throws std::invalid_argument when
// the widths differ or a gate is invalid.
StateVector run_circuit(const Circuit& circuit, StateVector init);
StateVector run_circuit(const Circuit& circuit);  // from |0...0>

// Full 2^n x 2^n unitary, built column by column from basis states.
Eigen::MatrixXcd circuit_unitary(const Circuit& circuit);

// max(|<a|b>|) style check for circuits from |0..0>.
bool equivalent_up_to_phase(const Circuit& a, const Circuit& b, double tol = 1e-9);

}  // namespace qpoker
