#include <qpoker/circuit/library.hpp>
#include <qpoker/device/device_model.hpp>
#include <qpoker/noisesim/noise.hpp>
#include <qpoker/qcore/sampling.hpp>
#include <qpoker/qcore/simulate.hpp>
#include <qpoker/transpiler/transpiler.hpp>

#include <benchmark/benchmark.h>

using namespace qpoker;

static void BM_RunMaxCircuit(benchmark::State& state) {
    const Circuit c = example_showdown();
    for (auto _ : state) benchmark::DoNotOptimize(run_circuit(c));
}
BENCHMARK(BM_RunMaxCircuit);

static void BM_RandomLayers(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Circuit c(n);
    for (int layer = 0; layer < 20; ++layer) {
        for (int q = 0; q < n; ++q) c.append(Gate::h(q));
        for (int q = 0; q + 1 < n; q += 2) c.append(Gate::cx(q, q + 1));
    }
    for (auto _ : state) benchmark::DoNotOptimize(run_circuit(c));
    state.SetComplexityN(1 << n);
}
BENCHMARK(BM_RandomLayers)->DenseRange(2, 8, 2)->Complexity();

static void BM_Sample(benchmark::State& state) {
    const StateVector s = run_circuit(example_showdown());
    Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(sample(s, static_cast<std::uint64_t>(state.range(0)), rng));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sample)->Arg(1024)->Arg(8192);

static void BM_SampleNoisy(benchmark::State& state) {
    const DeviceModel& dev = qx2_device();
    const Circuit c = example_showdown_qx2();
    const NoiseConfig noise = NoiseConfig::from_device(dev);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sample_noisy(c, dev, noise, static_cast<std::uint64_t>(state.range(0)), seed++));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleNoisy)->Arg(1024)->Arg(8192);

static void BM_TranspileMax(benchmark::State& state) {
    const DeviceModel& dev = state.range(0) == 0 ? qx2_device() : ourense_device();
    const Circuit c = example_showdown();
    for (auto _ : state) benchmark::DoNotOptimize(transpile(c, dev));
    state.SetLabel(dev.name);
}
BENCHMARK(BM_TranspileMax)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
