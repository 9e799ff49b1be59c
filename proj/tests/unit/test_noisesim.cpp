#include "../support/oracles.hpp"

#include <qpoker/circuit/library.hpp>
#include <qpoker/device/device_model.hpp>
#include <qpoker/noisesim/noise.hpp>
#include <qpoker/qcore/sampling.hpp>
#include <qpoker/qcore/simulate.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace qpoker;
using qpoker::testing::binomial_sigma;

namespace {

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

double sample_sd(const std::vector<double>& v) {
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

TEST(NoisySampling, ZeroNoiseMatchesIdealSampler) {
    const Circuit c = example_showdown_qx2();
    const auto noisy = sample_noisy(c, qx2_device(), NoiseConfig::ideal(5), 4096, 123);
    Rng rng(123);
    EXPECT_EQ(noisy, sample(run_circuit(c), 4096, rng));
}

TEST(NoisySampling, FullReadoutFlip) {
    NoiseConfig noise = NoiseConfig::ideal(5);
    noise.readout.assign(5, 1.0);
    const auto counts = sample_noisy(Circuit(5), qx2_device(), noise, 500, 1);
    EXPECT_EQ(counts.by_bit_string(), (std::map<std::string, std::uint64_t>{{"11111", 500}}));
}

TEST(NoisySampling, IllustrativeNoiseLowersMax) {
    const auto counts =
        sample_noisy(example_showdown_qx2(), qx2_device(), NoiseConfig::from_device(qx2_device()), 8192, 5);
    EXPECT_LT(expectation_ones(counts), 4.0);
}

TEST(NoisySampling, SeedDeterminism) {
    const auto noise = NoiseConfig::from_device(qx2_device());
    EXPECT_EQ(sample_noisy(example_showdown_qx2(), qx2_device(), noise, 2000, 9),
              sample_noisy(example_showdown_qx2(), qx2_device(), noise, 2000, 9));
    EXPECT_NE(sample_noisy(example_showdown_qx2(), qx2_device(), noise, 2000, 9),
              sample_noisy(example_showdown_qx2(), qx2_device(), noise, 2000, 10));
}

TEST(NoisySampling, NonconformantRejected) {
    EXPECT_THROW(sample_noisy(Circuit(5, {Gate::cx(0, 4)}), ourense_device(), NoiseConfig::ideal(5), 10, 0),
                 std::invalid_argument);
    EXPECT_THROW(sample_noisy(Circuit(5), qx2_device(), NoiseConfig::ideal(5), 0, 0), std::invalid_argument);
}

TEST(NoisySampling, MonotoneInCxRate) {
    const Circuit c = example_showdown_qx2();
    std::vector<std::vector<double>> by_scale;
    for (double scale : {1.0, 2.0, 4.0}) {
        NoiseConfig noise = NoiseConfig::from_device(qx2_device());
        for (auto& [edge, p] : noise.cx_pauli) p *= scale;
        std::vector<double> e;
        for (std::uint64_t seed = 0; seed < 64; ++seed)
            e.push_back(expectation_ones(sample_noisy(c, qx2_device(), noise, 1024, seed)));
        by_scale.push_back(std::move(e));
    }
    for (std::size_t k = 0; k + 1 < by_scale.size(); ++k) {
        const double se = std::hypot(sample_sd(by_scale[k]), sample_sd(by_scale[k + 1])) / std::sqrt(64.0);
        EXPECT_GT(mean(by_scale[k]) - mean(by_scale[k + 1]), 2.0 * se);
    }
}

TEST(Realization, InsertionFrequency) {
    const Circuit one_cx(2, {Gate::cx(0, 1)});
    NoiseConfig noise = NoiseConfig::ideal(2);
    const double q = 0.07;
    noise.cx_pauli[Edge::of(0, 1)] = q;
    Rng rng(42);
    const int trials = 100000;
    int inserted = 0;
    for (int i = 0; i < trials; ++i) {
        const auto r = draw_realization(one_cx, noise, rng);
        ASSERT_LE(r.size(), 1u);
        if (!r.empty()) {
            ++inserted;
            ASSERT_NE(r[0].code, 0);
            ASSERT_LT(r[0].code, 16);
        }
    }
    EXPECT_NEAR(inserted / double(trials), q, 3 * binomial_sigma(q, trials));
}

TEST(Realization, PairsAreUniformOverFifteen) {
    Rng rng(7);
    std::array<int, 16> hist{};
    const int draws = 150000;
    for (int i = 0; i < draws; ++i) ++hist[draw_nonidentity_pauli_pair(rng)];
    EXPECT_EQ(hist[0], 0);
    for (int k = 1; k < 16; ++k) EXPECT_NEAR(hist[k] / double(draws), 1.0 / 15, 5 * binomial_sigma(1.0 / 15, draws));
}

TEST(Realization, ApplyTagsNoise) {
    const Circuit c(2, {Gate::cx(0, 1), Gate::h(0)});
    const auto out = apply_realization(c, {{0, static_cast<PauliPairCode>((1 << 2) | 3)}});
    ASSERT_EQ(out.size(), 4u);
    EXPECT_EQ(out[1].kind, GateKind::PauliX);
    EXPECT_EQ(out[1].targets, std::vector<int>{0});
    EXPECT_EQ(out[2].kind, GateKind::PauliZ);
    EXPECT_EQ(out[2].targets, std::vector<int>{1});
    EXPECT_EQ(out[1].tag, Provenance::noise);
}

TEST(Readout, FlipExamples) {
    Rng rng(0);
    const std::vector<double> zero(5, 0.0), one(5, 1.0);
    EXPECT_EQ(flip_readout(0b01101, zero, rng), 0b01101u);
    EXPECT_EQ(flip_readout(0b01101, one, rng), 0b10010u);

    const std::vector<double> p{0.1};
    const int trials = 100000;
    int flips = 0;
    for (int i = 0; i < trials; ++i) flips += static_cast<int>(flip_readout(0, p, rng));
    EXPECT_NEAR(flips / double(trials), 0.1, 0.003);
}

TEST(Damping, KrausSets) {
    const auto k0 = amplitude_damping_kraus(0.0);
    EXPECT_LT((k0[0] - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(k0[1].cwiseAbs().maxCoeff(), 1e-15);

    const auto k = amplitude_damping_kraus(0.3);
    const Eigen::MatrixXcd sum = k[0].adjoint() * k[0] + k[1].adjoint() * k[1];
    EXPECT_LT((sum - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);

    EXPECT_THROW(amplitude_damping_kraus(-0.1), std::invalid_argument);
    EXPECT_THROW(amplitude_damping_kraus(1.1), std::invalid_argument);
}

TEST(Damping, TrajectoriesMatchDensityMatrix) {
    const Circuit c(3, {Gate::x(0), Gate::h(1), Gate::cx(1, 2), Gate::x(2), Gate::h(0)});
    const DeviceModel dev = load_device(R"({"name":"line3","n":3,"edges":[[0,1],[1,2]],
        "cx_error":{"0-1":0,"1-2":0},"readout_error":[0,0,0],"single_qubit_error":[0,0,0]})");
    NoiseConfig noise = NoiseConfig::ideal(3);
    noise.amplitude_damping = std::vector<double>{0.15, 0.05, 0.25};
    const std::uint64_t shots = 200000;
    const auto counts = sample_noisy(c, dev, noise, shots, 2718);
    const auto exact = damped_distribution(c, *noise.amplitude_damping);
    double total = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        total += exact[i];
        const double freq = static_cast<double>(counts[i]) / shots;
        EXPECT_NEAR(freq, exact[i], 5 * binomial_sigma(exact[i], shots) + 1e-12) << bit_string(i, 3);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Damping, FullDampingGroundsEverything) {
    const Circuit c(2, {Gate::x(0), Gate::x(1)});
    const auto exact = damped_distribution(c, std::vector<double>{1.0, 1.0});
    EXPECT_NEAR(exact[0], 1.0, 1e-12);
}

TEST(NoiseConfig, JsonForms) {
    const auto& dev = qx2_device();
    const auto from_device = noise_from_json(nlohmann::json{{"cx_pauli", "device"}, {"readout", "device"}}, dev);
    EXPECT_EQ(from_device.cx_pauli, dev.cx_error);
    EXPECT_EQ(from_device.readout, dev.readout_error);

    const auto uniform = noise_from_json(nlohmann::json{{"cx_pauli", 0.05}, {"readout", 0.01}}, dev);
    EXPECT_DOUBLE_EQ(uniform.cx_rate(3, 4), 0.05);
    EXPECT_EQ(uniform.readout, std::vector<double>(5, 0.01));

    EXPECT_TRUE(noise_from_json(nlohmann::json::object(), dev).is_noiseless());
    EXPECT_THROW(noise_from_json(nlohmann::json{{"readout", 1.5}}, dev), std::invalid_argument);
    EXPECT_THROW(noise_from_json(nlohmann::json{{"readout", {0.1, 0.1}}}, dev), std::invalid_argument);

    const auto round = noise_from_json(to_json(from_device), dev);
    EXPECT_EQ(round.cx_pauli, from_device.cx_pauli);
    EXPECT_EQ(round.readout, from_device.readout);
}
