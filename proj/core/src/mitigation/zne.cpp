#include "qpoker/mitigation/zne.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "qpoker/mitigation/richardson.hpp"
#include "qpoker/mitigation/twirl.hpp"

namespace qpoker {

namespace {

// Stream ids; arbitrary but fixed so results are reproducible across versions.
constexpr std::uint64_t kLevelStream = 1000;
constexpr std::uint64_t kCalibrationStream = 7;

template <class Job>
void run_jobs(std::size_t count, int threads, const Job& job) {
    const auto workers = static_cast<std::size_t>(std::clamp(threads, 1, 64));
    if (workers == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < count; i += workers) job(i);
                } catch (...) {
                    const std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

double repetition_expectation(const Counts& counts, const CalibrationMatrix* calibration) {
    if (!calibration) return expectation_ones(counts);
    return expectation_ones(apply_filter(*calibration, counts.distribution()));
}

ZneResult zne_pipeline(const Circuit& circuit, const DeviceModel& device, const NoiseConfig& noise,
                       const ZneConfig& config, const CalibrationMatrix* calibration) {
    validate_amplification_factors(config.rs);
    if (config.reps < 1) throw std::invalid_argument("reps must be at least 1");
    if (config.shots == 0) throw std::invalid_argument("shots must be at least 1");
    validate(noise, device);

    ZneResult result;
    if (config.use_filter && !calibration) {
        std::uint64_t run = 0;
        const MeasureFn measure = [&](const Circuit& prep, std::uint64_t shots) {
            return sample_noisy(prep, device, noise, shots, fork_seed(fork_seed(config.seed, kCalibrationStream), run++));
        };
        result.calibration = build_calibration(device.num_qubits, measure, config.calibration_shots);
        calibration = &*result.calibration;
    } else if (config.use_filter) {
        result.calibration = *calibration;
    }
    const CalibrationMatrix* filter = config.use_filter ? calibration : nullptr;

    const std::size_t levels = config.rs.size();
    const auto reps = static_cast<std::size_t>(config.reps);
    std::vector<double> expectations(levels * reps);
    run_jobs(expectations.size(), config.threads, [&](std::size_t job) {
        const std::size_t level = job / reps;
        const std::size_t rep = job % reps;
        const std::uint64_t stream = fork_seed(fork_seed(config.seed, kLevelStream + level), rep);
        Rng rng(stream);
        const Circuit twirled = config.twirl ? twirl_cx(circuit, rng) : circuit;
        const Circuit amplified = amplify_noise(twirled, noise.cx_pauli, config.rs[level], rng);
        const Counts counts = sample_noisy(amplified, device, noise, config.shots, fork_seed(stream, 1));
        expectations[job] = repetition_expectation(counts, filter);
    });

    std::vector<ExtrapolationPoint> series;
    for (std::size_t level = 0; level < levels; ++level) {
        ZneLevel z;
        z.r = config.rs[level];
        z.expectations.assign(expectations.begin() + static_cast<std::ptrdiff_t>(level * reps),
                              expectations.begin() + static_cast<std::ptrdiff_t>((level + 1) * reps));
        z.mean = std::accumulate(z.expectations.begin(), z.expectations.end(), 0.0) / static_cast<double>(reps);
        if (reps > 1) {
            double ss = 0.0;
            for (double e : z.expectations) ss += (e - z.mean) * (e - z.mean);
            z.stderr = std::sqrt(ss / static_cast<double>(reps - 1)) / std::sqrt(static_cast<double>(reps));
        }
        series.push_back({z.r, z.mean, z.stderr});
        result.levels.push_back(std::move(z));
    }
    result.coefficients = richardson_coefficients(config.rs);
    result.partial = partial_extrapolations(series);
    result.extrapolated = result.partial.back();
    result.extrapolated_stderr = richardson_stderr(series);
    return result;
}

std::vector<HistogramMode> histogram_modes(const std::vector<double>& values, double bin_width, int window,
                                           double min_fraction) {
    if (!(bin_width > 0.0)) throw std::invalid_argument("bin width must be positive");
    if (values.empty()) return {};
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double origin = std::floor(*lo_it / bin_width) * bin_width;
    const auto bins = static_cast<std::size_t>(std::floor((*hi_it - origin) / bin_width)) + 1;
    std::vector<std::size_t> hist(bins, 0);
    for (double v : values) {
        const auto b = std::min(bins - 1, static_cast<std::size_t>(std::floor((v - origin) / bin_width)));
        ++hist[b];
    }

    const auto at = [&](std::ptrdiff_t i) -> std::size_t {
        return i < 0 || i >= static_cast<std::ptrdiff_t>(bins) ? 0 : hist[static_cast<std::size_t>(i)];
    };
    const double threshold = min_fraction * static_cast<double>(values.size());
    std::vector<HistogramMode> modes;
    for (std::size_t i = 0; i < bins;) {
        std::size_t j = i;
        while (j + 1 < bins && hist[j + 1] == hist[i]) ++j;
        const std::size_t c = hist[i];
        bool peak = c > 0 && static_cast<double>(c) >= threshold;
        for (int k = 1; peak && k <= window; ++k) {
            peak = c > at(static_cast<std::ptrdiff_t>(i) - k) && c > at(static_cast<std::ptrdiff_t>(j) + k);
        }
        if (peak) modes.push_back({origin + (static_cast<double>(i + j) / 2.0 + 0.5) * bin_width, c});
        i = j + 1;
    }
    return modes;
}

double mode_spread(const std::vector<HistogramMode>& modes) {
    if (modes.size() < 2) return 0.0;
    const auto [lo, hi] = std::minmax_element(modes.begin(), modes.end(),
                                              [](const auto& a, const auto& b) { return a.center < b.center; });
    return hi->center - lo->center;
}

}  // namespace qpoker
