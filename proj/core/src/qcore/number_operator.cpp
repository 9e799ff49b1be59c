#include "qpoker/qcore/number_operator.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <bit>
#include <stdexcept>
#include <string>

#include "qpoker/qcore/types.hpp"

namespace qpoker {
namespace {

void check_range(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("number operator size " + std::to_string(num_qubits) + " outside [1, " +
                                    std::to_string(kMaxQubits) + "]");
    }
}

Eigen::MatrixXcd pauli_x() {
    Eigen::MatrixXcd m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Eigen::MatrixXcd pauli_y() {
    const Complex i{0.0, 1.0};
    Eigen::MatrixXcd m(2, 2);
    m << 0, -i, i, 0;
    return m;
}

Eigen::MatrixXcd pauli_z() {
    Eigen::MatrixXcd m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

// Leftmost factor acts on the most significant qubit q_{n-1}.
Eigen::MatrixXcd kron_all(const std::vector<Eigen::MatrixXcd>& factors) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (const auto& f : factors) {
        Eigen::MatrixXcd next = Eigen::kroneckerProduct(out, f).eval();
        out = std::move(next);
    }
    return out;
}

}  // namespace

Eigen::MatrixXcd NumberOperator::dense() const {
    const auto dim = static_cast<Eigen::Index>(diag.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) m(i, i) = static_cast<double>(diag[static_cast<std::size_t>(i)]);
    return m;
}

NumberOperator build_number_operator(int num_qubits) {
    check_range(num_qubits);
    NumberOperator op;
    op.num_qubits = num_qubits;
    op.diag.resize(std::size_t{1} << num_qubits);
    for (std::size_t i = 0; i < op.diag.size(); ++i) op.diag[i] = std::popcount(i);
    return op;
}

Eigen::MatrixXcd creation_operator(int mode, int num_qubits) {
    check_range(num_qubits);
    if (mode < 0 || mode >= num_qubits) throw std::invalid_argument("mode index out of range");
    const Complex i{0.0, 1.0};
    const Eigen::MatrixXcd raise = (pauli_x() - i * pauli_y()) / 2.0;  // |1><0|
    std::vector<Eigen::MatrixXcd> factors;
    for (int k = 0; k < num_qubits - mode - 1; ++k) factors.push_back(Eigen::MatrixXcd::Identity(2, 2));
    factors.push_back(raise);
    for (int k = 0; k < mode; ++k) factors.push_back(pauli_z());
    return kron_all(factors);
}

Eigen::MatrixXcd number_operator_second_quantized(int num_qubits) {
    check_range(num_qubits);
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (int mode = 0; mode < num_qubits; ++mode) {
        const Eigen::MatrixXcd create = creation_operator(mode, num_qubits);
        const Eigen::MatrixXcd annihilate = create.adjoint();
        sum += create * annihilate;
    }
    return sum;
}

}  // namespace qpoker
