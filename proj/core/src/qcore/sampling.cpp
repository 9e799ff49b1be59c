#include "qpoker/qcore/sampling.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qpoker {

Counts::Counts(int num_qubits) : num_qubits_(num_qubits), counts_(std::size_t{1} << num_qubits, 0) {}

void Counts::add(std::uint64_t outcome, std::uint64_t times) {
    counts_.at(outcome) += times;
    total_ += times;
}

std::vector<double> Counts::distribution() const {
    if (total_ == 0) throw std::invalid_argument("empty histogram");
    std::vector<double> p(counts_.size());
    for (std::size_t i = 0; i < counts_.size(); ++i) p[i] = static_cast<double>(counts_[i]) / static_cast<double>(total_);
    return p;
}

std::map<std::string, std::uint64_t> Counts::by_bit_string() const {
    std::map<std::string, std::uint64_t> out;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (counts_[i] != 0) out.emplace(bit_string(i, num_qubits_), counts_[i]);
    }
    return out;
}

std::vector<double> cumulative(std::span<const double> probabilities) {
    std::vector<double> cdf(probabilities.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        acc += probabilities[i];
        cdf[i] = acc;
    }
    return cdf;
}

std::uint64_t draw_outcome(std::span<const double> cdf, Rng& rng) {
    const double u = uniform01(rng) * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // Rounding can leave u at the very top; clamp to the last outcome with mass.
    if (it == cdf.end()) {
        std::size_t last = cdf.size() - 1;
        while (last > 0 && cdf[last] == cdf[last - 1]) --last;
        return last;
    }
    return static_cast<std::uint64_t>(it - cdf.begin());
}

Counts sample(const StateVector& state, std::uint64_t shots, Rng& rng) {
    if (shots == 0) throw std::invalid_argument("shots must be at least 1");
    const auto probs = state.probabilities();
    const auto cdf = cumulative(probs);
    Counts counts(state.num_qubits());
    for (std::uint64_t s = 0; s < shots; ++s) counts.add(draw_outcome(cdf, rng));
    return counts;
}

double expectation_ones(std::span<const double> weights) {
    if (weights.empty()) throw std::invalid_argument("empty distribution");
    double total = 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < 0.0) throw std::invalid_argument("negative weight in distribution");
        total += weights[i];
        acc += static_cast<double>(std::popcount(i)) * weights[i];
    }
    if (total <= 0.0) throw std::invalid_argument("distribution has zero total weight");
    return acc / total;
}

double expectation_ones(const Counts& counts) {
    if (counts.total() == 0) throw std::invalid_argument("empty distribution");
    const auto raw = counts.raw();
    double acc = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) acc += static_cast<double>(std::popcount(i)) * static_cast<double>(raw[i]);
    return acc / static_cast<double>(counts.total());
}

double expectation_zeros(std::span<const double> weights, int num_qubits) {
    return static_cast<double>(num_qubits) - expectation_ones(weights);
}

}  // namespace qpoker
