#include <qpoker/circuit/library.hpp>
#include <qpoker/device/device_model.hpp>
#include <qpoker/mitigation/calibration.hpp>
#include <qpoker/mitigation/twirl.hpp>
#include <qpoker/mitigation/zne.hpp>
#include <qpoker/noisesim/noise.hpp>

#include <benchmark/benchmark.h>

using namespace qpoker;

static void BM_TwirlAndAmplify(benchmark::State& state) {
    const DeviceModel& dev = qx2_device();
    const Circuit c = example_showdown_qx2();
    Rng rng(3);
    for (auto _ : state) benchmark::DoNotOptimize(amplify_noise(twirl_cx(c, rng), dev, 32.0, rng));
}
BENCHMARK(BM_TwirlAndAmplify);

static void BM_Nnls(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<double> flip(static_cast<std::size_t>(n), 0.03);
    const CalibrationMatrix cal = tensor_readout_calibration(flip);
    Rng rng(5);
    Eigen::VectorXd b(cal.p.rows());
    for (auto& x : b) x = uniform01(rng);
    b /= b.sum();
    for (auto _ : state) benchmark::DoNotOptimize(nnls(cal.p, b));
}
BENCHMARK(BM_Nnls)->DenseRange(1, 5);

static void BM_Filter(benchmark::State& state) {
    const CalibrationMatrix cal = tensor_readout_calibration(std::vector<double>(5, 0.03));
    std::vector<double> noisy(32, 0.0);
    noisy[0b01101] = 0.45;
    noisy[0b11111] = 0.45;
    for (auto& x : noisy) x += 0.1 / 32;
    for (auto _ : state) benchmark::DoNotOptimize(apply_filter(cal, noisy));
}
BENCHMARK(BM_Filter);

static void BM_ZneSmall(benchmark::State& state) {
    const DeviceModel& dev = qx2_device();
    const Circuit c = example_showdown_qx2();
    const NoiseConfig noise = NoiseConfig::from_device(dev);
    ZneConfig cfg;
    cfg.reps = 16;
    cfg.shots = 256;
    for (auto _ : state) {
        benchmark::DoNotOptimize(zne_pipeline(c, dev, noise, cfg));
        ++cfg.seed;
    }
}
BENCHMARK(BM_ZneSmall)->Unit(benchmark::kMillisecond);
