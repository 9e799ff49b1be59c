#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

namespace qpoker {

using Complex = std::complex<double>;

// Dense simulation is capped here; the game itself needs five qubits.
inline constexpr int kMaxQubits = 8;

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Derives independent stream seeds from (seed, stream)
// so that parallel and serial evaluation consume identical random numbers.
constexpr std::uint64_t fork_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Uniform double in [0, 1) with 53 random bits; identical on every platform.
inline double uniform01(Rng& rng) noexcept {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound). Rejection sampling keeps it unbiased.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) noexcept {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % bound;
}

inline bool bernoulli(Rng& rng, double p) noexcept {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform01(rng) < p;
}

// Renders basis index i as q_{n-1} ... q_0.
std::string bit_string(std::uint64_t index, int num_qubits);

// Inverse of bit_string; throws std::invalid_argument on malformed input.
std::uint64_t parse_bit_string(const std::string& bits);

}  // namespace qpoker
