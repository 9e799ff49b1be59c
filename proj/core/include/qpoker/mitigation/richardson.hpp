#pragma once

#include <optional>
#include <span>
#include <vector>

namespace qpoker {

struct ExtrapolationPoint {
    double r = 1.0;
    double value = 0.0;
    std::optional<double> stderr;
};

// c_i with sum c_i = 1 and sum c_i r_i^k = 0 for k = 1..n-1, i.e. the weights
// that evaluate the interpolating polynomial at r = 0. Throws
// std::invalid_argument for an empty list or repeated nodes.
std::vector<double> richardson_coefficients(std::span<const double> rs);

double richardson(std::span<const double> rs, std::span<const double> values);
double richardson(std::span<const ExtrapolationPoint> series);

// Standard error of the extrapolate assuming independent point errors:
// sqrt(sum c_i^2 stderr_i^2). Points without a stderr contribute zero.
double richardson_stderr(std::span<const ExtrapolationPoint> series);

// Extrapolates from the first k points for k = 1..n.
std::vector<double> partial_extrapolations(std::span<const ExtrapolationPoint> series);

// r_1 == 1 and strictly increasing; throws std::invalid_argument otherwise.
void validate_amplification_factors(std::span<const double> rs);

}  // namespace qpoker
