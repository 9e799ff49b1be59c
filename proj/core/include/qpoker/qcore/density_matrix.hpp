#pragma once

#include <Eigen/Dense>

#include <vector>

#include "qpoker/qcore/gate.hpp"
#include "qpoker/qcore/state_vector.hpp"

namespace qpoker {

using KrausSet = std::vector<Eigen::MatrixXcd>;

class DensityMatrix {
public:
    explicit DensityMatrix(int num_qubits);  // |0..0><0..0|
    static DensityMatrix from_state(const StateVector& psi);
    // Validates Hermiticity, unit trace and positivity before accepting rho.
    static DensityMatrix from_matrix(int num_qubits, Eigen::MatrixXcd rho);

    int num_qubits() const noexcept { return num_qubits_; }
    const Eigen::MatrixXcd& matrix() const noexcept { return rho_; }
    Eigen::Index dim() const noexcept { return rho_.rows(); }

    double trace() const;
    double purity() const;
    std::vector<double> probabilities() const;

    void apply_unitary(const Gate& gate);

private:
    DensityMatrix(int num_qubits, Eigen::MatrixXcd rho);

    int num_qubits_;
    Eigen::MatrixXcd rho_;
};

// Throws std::invalid_argument unless sum_i K_i^dagger K_i = I within tol.
void check_trace_preserving(const KrausSet& kraus, double tol = 1e-10);

// rho -> sum_i K_i rho K_i^dagger with full-dimension Kraus operators.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& kraus);

// Same, with 2x2 Kraus operators embedded on one qubit.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& kraus, int qubit);

// Full 2^n x 2^n unitary of one gate.
Eigen::MatrixXcd gate_unitary(const Gate& gate, int num_qubits);

// Embeds a 2x2 operator acting on `qubit` into the full 2^n space.
Eigen::MatrixXcd embed_single_qubit(const Eigen::Matrix2cd& op, int qubit, int num_qubits);

// Hermitian within tol, trace 1 within tol, min eigenvalue >= -psd_tol.
bool is_valid_density(const Eigen::MatrixXcd& rho, double tol = 1e-10, double psd_tol = 1e-9);

}  // namespace qpoker
