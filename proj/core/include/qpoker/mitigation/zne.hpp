#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qpoker/circuit/circuit.hpp"
#include "qpoker/device/device_model.hpp"
#include "qpoker/mitigation/calibration.hpp"
#include "qpoker/noisesim/noise.hpp"

namespace qpoker {

struct ZneConfig {
    std::vector<double> rs{1, 2, 4, 8, 16, 32};
    int reps = 256;
    std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
    bool use_filter = false;
    bool twirl = true;
    // Shots per preparation when use_filter builds its own calibration.
    std::uint64_t calibration_shots = 8192;
    // Worker threads for repetitions; results do not depend on this.
    int threads = 1;
};

struct ZneLevel {
    double r = 1.0;
    double mean = 0.0;
    double stderr = 0.0;  // sample sigma / sqrt(reps)
    std::vector<double> expectations;  // one per repetition, in order
};

struct ZneResult {
    std::vector<ZneLevel> levels;
    std::vector<double> coefficients;
    std::vector<double> partial;  // extrapolation from the first k levels
    double extrapolated = 0.0;
    double extrapolated_stderr = 0.0;
    std::optional<CalibrationMatrix> calibration;
};

// Twirls, amplifies and samples every repetition, averages per r, then
// extrapolates to r = 0. The amplification rates are the CX Pauli rates of
// `noise`, so a noiseless config yields the ideal value at every r.
ZneResult zne_pipeline(const Circuit& circuit, const DeviceModel& device, const NoiseConfig& noise,
                       const ZneConfig& config, const CalibrationMatrix* calibration = nullptr);

// Expectation of the number operator from one repetition's counts, optionally
// after measurement filtering.
double repetition_expectation(const Counts& counts, const CalibrationMatrix* calibration);

struct HistogramMode {
    double center = 0.0;
    std::size_t count = 0;
};

// Local maxima of a fixed-width histogram. A bin (or flat run of bins) is a mode
// when it exceeds every bin within `window` bins on both sides and holds at
// least `min_fraction` of the samples.
std::vector<HistogramMode> histogram_modes(const std::vector<double>& values, double bin_width,
                                           int window = 2, double min_fraction = 0.02);

// Largest distance between two modes, 0 with fewer than two.
double mode_spread(const std::vector<HistogramMode>& modes);

}  // namespace qpoker
