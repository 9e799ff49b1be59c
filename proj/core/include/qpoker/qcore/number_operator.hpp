#pragma once

#include <Eigen/Dense>

#include <vector>

namespace qpoker {

// Observable whose expectation is the expected count of 1s in the
// computational basis: diagonal with entries popcount(i).
struct NumberOperator {
    int num_qubits = 0;
    std::vector<int> diag;

    Eigen::MatrixXcd dense() const;
};

// Direct popcount construction. Throws for n outside [1, 8].
NumberOperator build_number_operator(int num_qubits);

// Sum of a_i^dagger a_i with a_i^dagger = I^(n-i-1) (x) Q+ (x) sigma_z^(i)
// and Q+- = (sigma_x -+ i sigma_y) / 2, built with explicit Kronecker products.
Eigen::MatrixXcd number_operator_second_quantized(int num_qubits);

// a_i^dagger alone (exposed for the anticommutation tests).
Eigen::MatrixXcd creation_operator(int mode, int num_qubits);

}  // namespace qpoker
