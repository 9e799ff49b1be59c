#include "qpoker/mitigation/calibration.hpp"

#include <cmath>
#include <limits>

#include "qpoker/qcore/types.hpp"

namespace qpoker {

namespace {

std::size_t dimension(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("calibration width must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    return std::size_t{1} << num_qubits;
}

}  // namespace

SingularCalibration::SingularCalibration(double condition)
    : std::runtime_error("calibration matrix is numerically singular (condition number " +
                         std::to_string(condition) + ")"),
      condition_(condition) {}

void validate(const CalibrationMatrix& cal) {
    const auto dim = static_cast<Eigen::Index>(dimension(cal.num_qubits));
    if (cal.p.rows() != dim || cal.p.cols() != dim) {
        throw std::invalid_argument("calibration matrix must be 2^n x 2^n");
    }
    if ((cal.p.array() < 0.0).any() || (cal.p.array() > 1.0).any()) {
        throw std::invalid_argument("calibration entries must lie in [0, 1]");
    }
    for (Eigen::Index j = 0; j < dim; ++j) {
        if (std::abs(cal.p.col(j).sum() - 1.0) > 1e-9) {
            throw std::invalid_argument("calibration column " + std::to_string(j) + " does not sum to 1");
        }
    }
}

double condition_number(const CalibrationMatrix& cal) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(cal.p);
    const auto& s = svd.singularValues();
    const double smallest = s(s.size() - 1);
    return smallest == 0.0 ? std::numeric_limits<double>::infinity() : s(0) / smallest;
}

Circuit preparation_circuit(int num_qubits, std::uint64_t j) {
    Circuit c(num_qubits, "prep_" + bit_string(j, num_qubits));
    for (int q = 0; q < num_qubits; ++q) {
        if ((j >> q) & 1U) c.append(Gate::x(q));
    }
    return c;
}

CalibrationMatrix build_calibration(int num_qubits, const MeasureFn& measure, std::uint64_t shots) {
    if (shots == 0) throw std::invalid_argument("shots must be at least 1");
    const std::size_t dim = dimension(num_qubits);
    CalibrationMatrix cal{num_qubits, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))};
    for (std::size_t j = 0; j < dim; ++j) {
        const Counts counts = measure(preparation_circuit(num_qubits, j), shots);
        if (counts.total() == 0) throw std::runtime_error("calibration run returned no shots");
        const auto column = counts.distribution();
        for (std::size_t i = 0; i < dim; ++i) cal.p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = column[i];
    }
    return cal;
}

CalibrationMatrix tensor_readout_calibration(std::span<const double> flip) {
    const std::size_t dim = dimension(static_cast<int>(flip.size()));
    CalibrationMatrix cal{static_cast<int>(flip.size()), Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))};
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            for (std::size_t q = 0; q < flip.size(); ++q) {
                const bool flipped = ((i ^ j) >> q) & 1U;
                cal.p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *= flipped ? flip[q] : 1.0 - flip[q];
            }
        }
    }
    return cal;
}

Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tolerance) {
    const Eigen::Index n = a.cols();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    std::vector<bool> passive(static_cast<std::size_t>(n), false);

    auto solve_passive = [&] {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
        }
        Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(idx.size()));
        for (std::size_t k = 0; k < idx.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
        const Eigen::VectorXd z = sub.colPivHouseholderQr().solve(b);
        Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
        for (std::size_t k = 0; k < idx.size(); ++k) s(idx[k]) = z(static_cast<Eigen::Index>(k));
        return s;
    };

    const int max_iterations = 3 * static_cast<int>(n) + 10;
    for (int iter = 0; iter < max_iterations; ++iter) {
        const Eigen::VectorXd w = a.transpose() * (b - a * x);
        Eigen::Index best = -1;
        double best_w = tolerance;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!passive[static_cast<std::size_t>(j)] && w(j) > best_w) {
                best_w = w(j);
                best = j;
            }
        }
        if (best < 0) break;
        passive[static_cast<std::size_t>(best)] = true;

        Eigen::VectorXd s = solve_passive();
        for (int inner = 0; inner < max_iterations; ++inner) {
            double alpha = 1.0;
            bool infeasible = false;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (passive[static_cast<std::size_t>(j)] && s(j) <= 0.0) {
                    infeasible = true;
                    alpha = std::min(alpha, x(j) / (x(j) - s(j)));
                }
            }
            if (!infeasible) break;
            x += alpha * (s - x);
            for (Eigen::Index j = 0; j < n; ++j) {
                if (passive[static_cast<std::size_t>(j)] && x(j) <= tolerance) {
                    passive[static_cast<std::size_t>(j)] = false;
                    x(j) = 0.0;
                }
            }
            s = solve_passive();
        }
        x = s;
    }
    return x.cwiseMax(0.0);
}

std::vector<double> apply_filter(const CalibrationMatrix& cal, std::span<const double> noisy, double max_condition) {
    validate(cal);
    if (static_cast<Eigen::Index>(noisy.size()) != cal.p.cols()) {
        throw std::invalid_argument("distribution has " + std::to_string(noisy.size()) + " entries, calibration expects " + std::to_string(cal.p.cols()));
    }
    double mass = 0.0;
    for (double v : noisy) {
        if (v < 0.0) throw std::invalid_argument("distribution has a negative entry");
        mass += v;
    }
    if (std::abs(mass - 1.0) > 1e-9) throw std::invalid_argument("distribution does not sum to 1");
    const double cond = condition_number(cal);
    if (!(cond <= max_condition)) throw SingularCalibration(cond);

    const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(noisy.data(), static_cast<Eigen::Index>(noisy.size()));
    const Eigen::VectorXd x = nnls(cal.p, b);
    const double total = x.sum();
    if (total <= 0.0) throw std::runtime_error("filtered distribution has zero mass");
    std::vector<double> out(noisy.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x(static_cast<Eigen::Index>(i)) / total;
    return out;
}

}  // namespace qpoker
