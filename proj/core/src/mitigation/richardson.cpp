#include "qpoker/mitigation/richardson.hpp"

#include <cmath>
#include <stdexcept>

namespace qpoker {

std::vector<double> richardson_coefficients(std::span<const double> rs) {
    if (rs.empty()) throw std::invalid_argument("richardson needs at least one point");
    std::vector<double> c(rs.size(), 1.0);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        for (std::size_t j = 0; j < rs.size(); ++j) {
            if (i == j) continue;
            if (rs[j] == rs[i]) throw std::invalid_argument("richardson nodes must be distinct");
            c[i] *= rs[j] / (rs[j] - rs[i]);
        }
    }
    return c;
}

double richardson(std::span<const double> rs, std::span<const double> values) {
    if (rs.size() != values.size()) throw std::invalid_argument("richardson: node and value counts differ");
    const auto c = richardson_coefficients(rs);
    double e = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) e += c[i] * values[i];
    return e;
}

namespace {

std::pair<std::vector<double>, std::vector<double>> split(std::span<const ExtrapolationPoint> series) {
    std::vector<double> rs, values;
    for (const auto& p : series) {
        rs.push_back(p.r);
        values.push_back(p.value);
    }
    return {rs, values};
}

}  // namespace

double richardson(std::span<const ExtrapolationPoint> series) {
    const auto [rs, values] = split(series);
    return richardson(rs, values);
}

double richardson_stderr(std::span<const ExtrapolationPoint> series) {
    const auto [rs, values] = split(series);
    const auto c = richardson_coefficients(rs);
    double var = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double s = series[i].stderr.value_or(0.0);
        var += c[i] * c[i] * s * s;
    }
    return std::sqrt(var);
}

std::vector<double> partial_extrapolations(std::span<const ExtrapolationPoint> series) {
    std::vector<double> out;
    for (std::size_t k = 1; k <= series.size(); ++k) out.push_back(richardson(series.first(k)));
    return out;
}

void validate_amplification_factors(std::span<const double> rs) {
    if (rs.empty() || rs.front() != 1.0) throw std::invalid_argument("amplification factors must start at r = 1");
    for (std::size_t i = 1; i < rs.size(); ++i) {
        if (!(rs[i] > rs[i - 1])) throw std::invalid_argument("amplification factors must be strictly increasing");
    }
}

}  // namespace qpoker
