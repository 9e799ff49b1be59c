#include "qpoker/qcore/density_matrix.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>
#include <string>
#include <utility>

namespace qpoker {

DensityMatrix::DensityMatrix(int num_qubits) : DensityMatrix(DensityMatrix::from_state(StateVector(num_qubits))) {}

DensityMatrix::DensityMatrix(int num_qubits, Eigen::MatrixXcd rho) : num_qubits_(num_qubits), rho_(std::move(rho)) {}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
    const Eigen::VectorXcd v = psi.to_eigen();
    return DensityMatrix(psi.num_qubits(), v * v.adjoint());
}

DensityMatrix DensityMatrix::from_matrix(int num_qubits, Eigen::MatrixXcd rho) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) throw std::invalid_argument("qubit count out of range");
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    if (rho.rows() != dim || rho.cols() != dim) throw std::invalid_argument("density matrix has wrong dimension");
    if (!is_valid_density(rho)) throw std::invalid_argument("matrix is not a valid density matrix");
    return DensityMatrix(num_qubits, std::move(rho));
}

double DensityMatrix::trace() const { return rho_.trace().real(); }

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

std::vector<double> DensityMatrix::probabilities() const {
    std::vector<double> p(static_cast<std::size_t>(rho_.rows()));
    for (Eigen::Index i = 0; i < rho_.rows(); ++i) p[static_cast<std::size_t>(i)] = rho_(i, i).real();
    return p;
}

void DensityMatrix::apply_unitary(const Gate& gate) {
    const Eigen::MatrixXcd u = gate_unitary(gate, num_qubits_);
    rho_ = u * rho_ * u.adjoint();
}

Eigen::MatrixXcd gate_unitary(const Gate& gate, int num_qubits) {
    validate_gate(gate, num_qubits);
    const std::size_t dim = std::size_t{1} << num_qubits;
    Eigen::MatrixXcd u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t c = 0; c < dim; ++c) {
        StateVector column = StateVector::basis(num_qubits, c);
        column.apply(gate);
        u.col(static_cast<Eigen::Index>(c)) = column.to_eigen();
    }
    return u;
}

void check_trace_preserving(const KrausSet& kraus, double tol) {
    if (kraus.empty()) throw std::invalid_argument("empty Kraus set");
    const Eigen::Index dim = kraus.front().rows();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& k : kraus) {
        if (k.rows() != dim || k.cols() != dim) throw std::invalid_argument("Kraus operators differ in dimension");
        sum += k.adjoint() * k;
    }
    const double dev = (sum - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (dev > tol) {
        throw std::invalid_argument("non-trace-preserving Kraus set (deviation " + std::to_string(dev) + ")");
    }
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& kraus) {
    check_trace_preserving(kraus);
    if (kraus.front().rows() != rho.dim()) throw std::invalid_argument("Kraus dimension does not match state");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
    for (const auto& k : kraus) out += k * rho.matrix() * k.adjoint();
    return DensityMatrix::from_matrix(rho.num_qubits(), std::move(out));
}

Eigen::MatrixXcd embed_single_qubit(const Eigen::Matrix2cd& op, int qubit, int num_qubits) {
    if (qubit < 0 || qubit >= num_qubits) throw std::invalid_argument("qubit index out of range");
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    const Eigen::Index bit = Eigen::Index{1} << qubit;
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            if ((r & ~bit) != (c & ~bit)) continue;
            full(r, c) = op((r & bit) ? 1 : 0, (c & bit) ? 1 : 0);
        }
    }
    return full;
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& kraus, int qubit) {
    check_trace_preserving(kraus);
    if (kraus.front().rows() != 2) throw std::invalid_argument("single-qubit channel needs 2x2 Kraus operators");
    KrausSet full;
    full.reserve(kraus.size());
    for (const auto& k : kraus) full.push_back(embed_single_qubit(k, qubit, rho.num_qubits()));
    return apply_channel(rho, full);
}

bool is_valid_density(const Eigen::MatrixXcd& rho, double tol, double psd_tol) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) return false;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -psd_tol;
}

}  // namespace qpoker
