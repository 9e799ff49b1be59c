#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qpoker/qcore/state_vector.hpp"
#include "qpoker/qcore/types.hpp"

namespace qpoker {

// Measurement histogram over the 2^n computational basis outcomes.
class Counts {
public:
    explicit Counts(int num_qubits);

    int num_qubits() const noexcept { return num_qubits_; }
    std::uint64_t total() const noexcept { return total_; }
    std::uint64_t operator[](std::uint64_t outcome) const { return counts_.at(outcome); }
    std::span<const std::uint64_t> raw() const noexcept { return counts_; }

    void add(std::uint64_t outcome, std::uint64_t times = 1);
    std::vector<double> distribution() const;
    // Nonzero entries keyed by q_{n-1}..q_0 bit strings.
    std::map<std::string, std::uint64_t> by_bit_string() const;

    friend bool operator==(const Counts&, const Counts&) = default;

private:
    int num_qubits_;
    std::uint64_t total_ = 0;
    std::vector<std::uint64_t> counts_;
};

// Cumulative distribution used for inverse-CDF sampling.
std::vector<double> cumulative(std::span<const double> probabilities);

// Draws one outcome from a cumulative table with a single uniform draw.
std::uint64_t draw_outcome(std::span<const double> cdf, Rng& rng);

// shots i.i.d. draws from |amps|^2. Throws std::invalid_argument for shots == 0.
Counts sample(const StateVector& state, std::uint64_t shots, Rng& rng);

// sum_i popcount(i) p(i) / sum_i p(i). Throws for an empty or zero-mass input.
double expectation_ones(std::span<const double> weights);
double expectation_ones(const Counts& counts);

// Same with popcount replaced by the number of zeros (benchmark scoring).
double expectation_zeros(std::span<const double> weights, int num_qubits);

}  // namespace qpoker
