#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpoker/circuit/circuit.hpp"
#include "qpoker/qcore/sampling.hpp"

namespace qpoker {

// p(i, j) = P(observe i | prepared j). Columns sum to one.
struct CalibrationMatrix {
    int num_qubits = 0;
    Eigen::MatrixXd p;
};

// Throws std::invalid_argument unless p is 2^n square with entries in [0,1]
// and every column summing to 1 within 1e-9.
void validate(const CalibrationMatrix& cal);

double condition_number(const CalibrationMatrix& cal);

class SingularCalibration : public std::runtime_error {
public:
    explicit SingularCalibration(double condition);
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

// Runs a basis-state preparation circuit and returns its histogram.
using MeasureFn = std::function<Counts(const Circuit& preparation, std::uint64_t shots)>;

// X gates on |0...0> preparing basis state j.
Circuit preparation_circuit(int num_qubits, std::uint64_t j);

// One preparation per basis state (2^n runs). Throws for shots == 0.
CalibrationMatrix build_calibration(int num_qubits, const MeasureFn& measure, std::uint64_t shots);

// Symmetric flip model: readout errors independent per qubit.
CalibrationMatrix tensor_readout_calibration(std::span<const double> flip);

// Lawson-Hanson non-negative least squares: argmin |Ax - b| subject to x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tolerance = 1e-12);

// Solves noisy = P ideal with ideal >= 0, then renormalizes onto the simplex.
// Throws SingularCalibration when cond(P) exceeds max_condition.
std::vector<double> apply_filter(const CalibrationMatrix& cal, std::span<const double> noisy,
                                 double max_condition = 1e12);

}  // namespace qpoker
