#include "../support/oracles.hpp"

#include <qpoker/circuit/library.hpp>
#include <qpoker/device/device_model.hpp>
#include <qpoker/mitigation/calibration.hpp>
#include <qpoker/mitigation/richardson.hpp>
#include <qpoker/mitigation/twirl.hpp>
#include <qpoker/mitigation/zne.hpp>
#include <qpoker/noisesim/noise.hpp>
#include <qpoker/qcore/sampling.hpp>
#include <qpoker/qcore/simulate.hpp>
#include <qpoker/qcore/state_vector.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace qpoker;
using qpoker::testing::binomial_sigma;

namespace {

// Columns of the published table, written out as (a, b, c, d) with 0=I 1=X 2=Y 3=Z.
const std::array<TwirlRow, 16> kExpectedRows{{
    {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 2, 3, 2}, {0, 3, 3, 3},
    {1, 0, 1, 1}, {1, 1, 1, 0}, {1, 2, 2, 3}, {1, 3, 2, 2},
    {2, 0, 2, 1}, {2, 1, 2, 0}, {2, 2, 1, 3}, {2, 3, 1, 2},
    {3, 0, 3, 0}, {3, 1, 3, 1}, {3, 2, 0, 2}, {3, 3, 0, 3},
}};

Eigen::Matrix2cd pauli(int k) {
    using C = Complex;
    Eigen::Matrix2cd m;
    switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, C(0, -1), C(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
    }
    return m;
}

// Basis index = control + 2 * target.
Eigen::Matrix4cd on_pair(int control_pauli, int target_pauli) {
    const Eigen::Matrix2cd a = pauli(control_pauli), b = pauli(target_pauli);
    Eigen::Matrix4cd m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = b(r >> 1, c >> 1) * a(r & 1, c & 1);
    return m;
}

Eigen::Matrix4cd cx() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i) m((i & 1) ? i ^ 2 : i, i) = 1.0;
    return m;
}

std::vector<double> random_simplex(int dim, Rng& rng) {
    std::vector<double> p(static_cast<std::size_t>(dim));
    double total = 0.0;
    for (auto& x : p) total += (x = -std::log(uniform01(rng) + 1e-300));
    for (auto& x : p) x /= total;
    return p;
}

CalibrationMatrix worked_example_p() {
    CalibrationMatrix cal{2, Eigen::MatrixXd::Constant(4, 4, 0.2 / 3)};
    cal.p.diagonal().setConstant(0.8);
    return cal;
}

}  // namespace

TEST(Twirl, TableMatchesPublishedRows) {
    EXPECT_EQ(twirl_table(), kExpectedRows);
}

TEST(Twirl, EveryRowIsAnIdentity) {
    const Eigen::Matrix4cd u = cx();
    for (const auto& row : twirl_table()) {
        const Eigen::Matrix4cd lhs = on_pair(row.c, row.d);
        const Eigen::Matrix4cd rhs = u * on_pair(row.a, row.b) * u.adjoint();
        Eigen::Index r = 0, c = 0;
        rhs.cwiseAbs().maxCoeff(&r, &c);
        const Complex phase = lhs(r, c) / rhs(r, c);
        EXPECT_LT((lhs - phase * rhs).cwiseAbs().maxCoeff(), 1e-12);

        const auto check = verify_twirl_row(row);
        EXPECT_TRUE(check.ok);
        EXPECT_LT(check.max_error, 1e-12);
        EXPECT_LT(std::abs(std::arg(phase * std::polar(1.0, -check.phase))), 1e-12);
    }
}

TEST(Twirl, InvalidRowRejected) {
    EXPECT_FALSE(verify_twirl_row({1, 0, 1, 0}).ok);
    EXPECT_FALSE(verify_twirl_row({0, 2, 0, 2}).ok);
}

TEST(Twirl, RandomCircuitsPreserved) {
    Rng rng(1000);
    for (int trial = 0; trial < 1000; ++trial) {
        const Circuit c = qpoker::testing::random_circuit(5, 25, rng);
        const Circuit t = twirl_cx(c, rng);
        ASSERT_GE(fidelity(run_circuit(c), run_circuit(t)), 1.0 - 1e-9);
    }
}

TEST(Twirl, InsertedGatesTagged) {
    Rng rng(4);
    const Circuit c(2, {Gate::cx(0, 1)});
    bool saw_insertion = false;
    for (int trial = 0; trial < 50; ++trial) {
        const Circuit t = twirl_cx(c, rng);
        EXPECT_EQ(count_cx(t), 1);
        for (const auto& g : t.ops()) {
            if (g.kind == GateKind::CX) continue;
            EXPECT_EQ(g.tag, Provenance::twirl);
            EXPECT_NE(g.kind, GateKind::PauliI);
            saw_insertion = true;
        }
    }
    EXPECT_TRUE(saw_insertion);
}

TEST(Amplify, UnitFactorUnchanged) {
    Rng rng(1);
    const Circuit c = example_showdown_qx2();
    EXPECT_EQ(amplify_noise(c, qx2_device(), 1.0, rng), c);
}

TEST(Amplify, InsertionProbability) {
    const Circuit c(2, {Gate::cx(0, 1)});
    const std::map<Edge, double> eps{{Edge::of(0, 1), 0.01}};
    Rng rng(77);
    const int trials = 100000;
    int inserted = 0;
    for (int i = 0; i < trials; ++i) {
        const Circuit out = amplify_noise(c, eps, 4.0, rng);
        if (out.size() == 1) continue;
        ++inserted;
        bool any_non_identity = false;
        for (std::size_t k = 1; k < out.size(); ++k) {
            ASSERT_EQ(out[k].tag, Provenance::noise);
            any_non_identity |= out[k].kind != GateKind::PauliI;
        }
        ASSERT_TRUE(any_non_identity);
    }
    EXPECT_NEAR(inserted / double(trials), 0.03, 3 * binomial_sigma(0.03, trials));
}

TEST(Amplify, Errors) {
    Rng rng(0);
    const Circuit c(2, {Gate::cx(0, 1)});
    EXPECT_THROW(amplify_noise(c, std::map<Edge, double>{{Edge::of(0, 1), 0.01}}, 0.5, rng), std::invalid_argument);
    EXPECT_THROW(amplify_noise(c, std::map<Edge, double>{{Edge::of(0, 1), 0.2}}, 7.0, rng), std::invalid_argument);
}

TEST(Richardson, TwoNodes) {
    const std::vector<double> rs{1, 2};
    const std::vector<double> e{3.7, 3.5};
    EXPECT_EQ(richardson(rs, e), 2 * 3.7 - 3.5);
    EXPECT_EQ(richardson_coefficients(rs), (std::vector<double>{2.0, -1.0}));
}

TEST(Richardson, SingleNode) {
    EXPECT_EQ(richardson(std::vector<double>{1}, std::vector<double>{3.25}), 3.25);
}

TEST(Richardson, QuadraticRecovered) {
    const std::vector<double> rs{1, 2, 4};
    std::vector<double> e;
    for (double r : rs) e.push_back(5 - 0.1 * r - 0.02 * r * r);
    EXPECT_NEAR(richardson(rs, e), 5.0, 1e-10);
}

TEST(Richardson, PolynomialExactnessAtPaperNodes) {
    const std::vector<double> rs{1, 2, 4, 8, 16, 32};
    Rng rng(3);
    for (int degree = 0; degree < 6; ++degree) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> coeff(degree + 1);
            for (auto& c : coeff) c = 2.0 * uniform01(rng) - 1.0;
            coeff[0] = 4.0;
            std::vector<double> e;
            for (double r : rs) {
                double v = 0.0, pow = 1.0;
                for (double c : coeff) v += c * pow, pow *= r;
                e.push_back(v);
            }
            EXPECT_LE(std::abs(richardson(rs, e) - 4.0), 1e-8 * 4.0) << "degree " << degree;
        }
    }
}

TEST(Richardson, AgreesWithVandermondeSolve) {
    Rng rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(uniform_below(rng, 5));
        std::vector<double> rs{1.0};
        while (static_cast<int>(rs.size()) < n) rs.push_back(rs.back() + 0.5 + 2.0 * uniform01(rng));
        std::vector<double> e;
        for (int i = 0; i < n; ++i) e.push_back(uniform01(rng) * 5);
        EXPECT_NEAR(richardson(rs, e), qpoker::testing::vandermonde_extrapolate(rs, e), 1e-8);

        const auto c = richardson_coefficients(rs);
        EXPECT_NEAR(std::accumulate(c.begin(), c.end(), 0.0), 1.0, 1e-12);
        for (int k = 1; k < n; ++k) {
            double moment = 0.0, scale = 0.0;
            for (int i = 0; i < n; ++i) {
                moment += c[i] * std::pow(rs[i], k);
                scale += std::abs(c[i] * std::pow(rs[i], k));
            }
            EXPECT_LT(std::abs(moment), 1e-12 * scale);
        }
    }
}

TEST(Richardson, Errors) {
    EXPECT_THROW(richardson_coefficients(std::vector<double>{}), std::invalid_argument);
    EXPECT_THROW(richardson_coefficients(std::vector<double>{1, 2, 2}), std::invalid_argument);
    EXPECT_THROW(validate_amplification_factors(std::vector<double>{2, 4}), std::invalid_argument);
    EXPECT_THROW(validate_amplification_factors(std::vector<double>{1, 4, 2}), std::invalid_argument);
    EXPECT_NO_THROW(validate_amplification_factors(std::vector<double>{1, 2, 4, 8, 16, 32}));
}

TEST(Richardson, SeriesHelpers) {
    const std::vector<ExtrapolationPoint> series{{1, 3.8, 0.01}, {2, 3.6, 0.02}, {4, 3.3, std::nullopt}};
    const auto partial = partial_extrapolations(series);
    ASSERT_EQ(partial.size(), 3u);
    EXPECT_DOUBLE_EQ(partial[0], 3.8);
    EXPECT_DOUBLE_EQ(partial[1], 2 * 3.8 - 3.6);
    EXPECT_DOUBLE_EQ(partial[2], richardson(series));

    const auto c = richardson_coefficients(std::vector<double>{1, 2, 4});
    EXPECT_NEAR(richardson_stderr(series), std::hypot(c[0] * 0.01, c[1] * 0.02), 1e-15);
}

TEST(Calibration, NoiselessIsIdentity) {
    const MeasureFn measure = [](const Circuit& prep, std::uint64_t shots) {
        Rng rng(0);
        return sample(run_circuit(prep), shots, rng);
    };
    const auto cal = build_calibration(3, measure, 100);
    EXPECT_EQ(cal.p, Eigen::MatrixXd::Identity(8, 8));
}

TEST(Calibration, SingleQubitFlipModel) {
    const double p = 0.1;
    const std::uint64_t shots = 100000;
    NoiseConfig noise = NoiseConfig::ideal(1);
    noise.readout = {p};
    const DeviceModel dev = load_device(
        R"({"name":"one","n":1,"edges":[],"cx_error":{},"readout_error":[0],"single_qubit_error":[0]})");
    std::uint64_t seed = 0;
    const MeasureFn measure = [&](const Circuit& prep, std::uint64_t n) {
        return sample_noisy(prep, dev, noise, n, seed++);
    };
    const auto cal = build_calibration(1, measure, shots);
    const double tol = 4 * binomial_sigma(p, shots);
    EXPECT_NEAR(cal.p(0, 0), 1 - p, tol);
    EXPECT_NEAR(cal.p(1, 0), p, tol);
    EXPECT_NEAR(cal.p(0, 1), p, tol);
    EXPECT_NEAR(cal.p(1, 1), 1 - p, tol);
}

TEST(Calibration, FiveQubitsNeedThirtyTwoPreparations) {
    int runs = 0;
    std::vector<std::uint64_t> prepared;
    const MeasureFn measure = [&](const Circuit& prep, std::uint64_t shots) {
        ++runs;
        Rng rng(0);
        const auto psi = run_circuit(prep);
        for (std::uint64_t i = 0; i < psi.dim(); ++i)
            if (std::norm(psi[i]) > 0.5) prepared.push_back(i);
        return sample(psi, shots, rng);
    };
    const auto cal = build_calibration(5, measure, 10);
    EXPECT_EQ(runs, 32);
    std::sort(prepared.begin(), prepared.end());
    for (std::uint64_t j = 0; j < 32; ++j) EXPECT_EQ(prepared[j], j);
    EXPECT_EQ(cal.p.rows(), 32);
    EXPECT_THROW(build_calibration(2, measure, 0), std::invalid_argument);
}

TEST(Calibration, ColumnsSumToOne) {
    const auto cal = tensor_readout_calibration(std::vector<double>{0.03, 0.05, 0.01});
    EXPECT_NO_THROW(validate(cal));
    for (Eigen::Index j = 0; j < cal.p.cols(); ++j) EXPECT_NEAR(cal.p.col(j).sum(), 1.0, 1e-9);
    EXPECT_NEAR(cal.p(0b001, 0b000), 0.03 * 0.95 * 0.99, 1e-15);
}

TEST(Calibration, ValidateRejects) {
    CalibrationMatrix cal{1, Eigen::MatrixXd::Identity(2, 2)};
    cal.p(0, 0) = 0.9;
    EXPECT_THROW(validate(cal), std::invalid_argument);
    EXPECT_THROW(validate(CalibrationMatrix{2, Eigen::MatrixXd::Identity(2, 2)}), std::invalid_argument);
}

TEST(Filter, WorkedExample) {
    const std::vector<double> noisy{13.0 / 30, 2.0 / 30, 2.0 / 30, 13.0 / 30};
    const auto ideal = apply_filter(worked_example_p(), noisy);
    const std::vector<double> expected{0.5, 0.0, 0.0, 0.5};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(ideal[i], expected[i], 1e-10);
}

TEST(Filter, IdentityLeavesInputUnchanged) {
    Rng rng(5);
    const auto d = random_simplex(8, rng);
    const auto out = apply_filter(CalibrationMatrix{3, Eigen::MatrixXd::Identity(8, 8)}, d);
    for (int i = 0; i < 8; ++i) EXPECT_NEAR(out[i], d[i], 1e-12);
}

TEST(Filter, RoundTrip) {
    Rng rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> flips;
        for (int q = 0; q < 3; ++q) flips.push_back(0.15 * uniform01(rng));
        const auto cal = tensor_readout_calibration(flips);
        const auto d = random_simplex(8, rng);
        const Eigen::VectorXd noisy = cal.p * Eigen::Map<const Eigen::VectorXd>(d.data(), 8);
        const auto out = apply_filter(cal, std::vector<double>(noisy.data(), noisy.data() + 8));
        for (int i = 0; i < 8; ++i) ASSERT_NEAR(out[i], d[i], 1e-8);
    }
}

TEST(Filter, OutputOnSimplex) {
    Rng rng(7);
    const auto cal = tensor_readout_calibration(std::vector<double>{0.1, 0.2, 0.05});
    for (int trial = 0; trial < 200; ++trial) {
        // Arbitrary input, not necessarily in the image of P.
        const auto noisy = random_simplex(8, rng);
        const auto out = apply_filter(cal, noisy);
        double total = 0.0;
        for (double x : out) {
            ASSERT_GE(x, 0.0);
            total += x;
        }
        ASSERT_NEAR(total, 1.0, 1e-9);
    }
}

TEST(Filter, SingularCalibrationReported) {
    const auto cal = tensor_readout_calibration(std::vector<double>{0.5});
    try {
        apply_filter(cal, std::vector<double>{0.5, 0.5});
        FAIL() << "expected SingularCalibration";
    } catch (const SingularCalibration& e) {
        EXPECT_GT(e.condition(), 1e12);
        EXPECT_NE(std::string(e.what()).find("condition"), std::string::npos);
    }
}

TEST(Nnls, MatchesExhaustiveSearch) {
    Rng rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        const int rows = 3 + static_cast<int>(uniform_below(rng, 4));
        const int cols = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(rows)));
        Eigen::MatrixXd a(rows, cols);
        Eigen::VectorXd b(rows);
        for (int i = 0; i < rows; ++i) {
            b(i) = 2 * uniform01(rng) - 1;
            for (int j = 0; j < cols; ++j) a(i, j) = 2 * uniform01(rng) - 1;
        }
        const Eigen::VectorXd x = nnls(a, b);
        const Eigen::VectorXd ref = qpoker::testing::brute_force_nnls(a, b);
        ASSERT_GE(x.minCoeff(), 0.0);
        ASSERT_NEAR((a * x - b).norm(), (a * ref - b).norm(), 1e-9);
        ASSERT_LT((x - ref).cwiseAbs().maxCoeff(), 1e-7);
    }
}

TEST(Zne, NoiselessBackendGivesIdealEverywhere) {
    ZneConfig cfg;
    cfg.reps = 8;
    cfg.shots = 256;
    cfg.seed = 3;
    // Max's state has a deterministic q0 q2 q3 and 50/50 q1 q4; use a fully
    // deterministic circuit so every sample equals the ideal value.
    const Circuit c(5, {Gate::x(0), Gate::x(2), Gate::cx(2, 3), Gate::cx(0, 1)});
    const auto result = zne_pipeline(c, qx2_device(), NoiseConfig::ideal(5), cfg);
    for (const auto& level : result.levels) {
        EXPECT_DOUBLE_EQ(level.mean, 4.0);
        EXPECT_DOUBLE_EQ(level.stderr, 0.0);
    }
    EXPECT_NEAR(result.extrapolated, 4.0, 1e-9);
}

TEST(Zne, ThreadCountDoesNotChangeResults) {
    ZneConfig cfg;
    cfg.rs = {1, 2, 4};
    cfg.reps = 12;
    cfg.shots = 128;
    cfg.seed = 11;
    const auto noise = NoiseConfig::from_device(qx2_device());
    const auto serial = zne_pipeline(example_showdown_qx2(), qx2_device(), noise, cfg);
    cfg.threads = 3;
    const auto parallel = zne_pipeline(example_showdown_qx2(), qx2_device(), noise, cfg);
    ASSERT_EQ(serial.levels.size(), parallel.levels.size());
    for (std::size_t k = 0; k < serial.levels.size(); ++k)
        EXPECT_EQ(serial.levels[k].expectations, parallel.levels[k].expectations);
    EXPECT_EQ(serial.extrapolated, parallel.extrapolated);
}

TEST(Zne, SeriesBookkeeping) {
    ZneConfig cfg;
    cfg.rs = {1, 2, 4};
    cfg.reps = 16;
    cfg.shots = 128;
    cfg.seed = 2;
    const auto r = zne_pipeline(example_showdown_qx2(), qx2_device(), NoiseConfig::from_device(qx2_device()), cfg);
    ASSERT_EQ(r.levels.size(), 3u);
    std::vector<double> means;
    for (const auto& level : r.levels) {
        ASSERT_EQ(level.expectations.size(), 16u);
        const double m = std::accumulate(level.expectations.begin(), level.expectations.end(), 0.0) / 16;
        EXPECT_NEAR(level.mean, m, 1e-12);
        double ss = 0.0;
        for (double e : level.expectations) ss += (e - m) * (e - m);
        EXPECT_NEAR(level.stderr, std::sqrt(ss / 15) / 4, 1e-12);
        means.push_back(level.mean);
    }
    EXPECT_NEAR(r.extrapolated, richardson(cfg.rs, means), 1e-12);
    EXPECT_DOUBLE_EQ(r.partial.back(), r.extrapolated);
    EXPECT_FALSE(r.calibration.has_value());
}

TEST(Zne, ConfigErrors) {
    ZneConfig cfg;
    cfg.rs = {1, 2, 2};
    EXPECT_THROW(zne_pipeline(example_showdown_qx2(), qx2_device(), NoiseConfig::ideal(5), cfg), std::invalid_argument);
    cfg.rs = {1, 2};
    cfg.reps = 0;
    EXPECT_THROW(zne_pipeline(example_showdown_qx2(), qx2_device(), NoiseConfig::ideal(5), cfg), std::invalid_argument);
    cfg.reps = 2;
    EXPECT_THROW(zne_pipeline(example_showdown(), qx2_device(), NoiseConfig::ideal(5), cfg), std::invalid_argument);
}

TEST(Zne, TwirlTransparentOnIdealBackend) {
    ZneConfig cfg;
    cfg.rs = {1};
    cfg.reps = 64;
    cfg.shots = 512;
    cfg.seed = 5;
    const auto twirled = zne_pipeline(example_showdown_qx2(), qx2_device(), NoiseConfig::ideal(5), cfg);
    cfg.twirl = false;
    cfg.seed = 6;
    const auto plain = zne_pipeline(example_showdown_qx2(), qx2_device(), NoiseConfig::ideal(5), cfg);
    const double se = std::hypot(twirled.levels[0].stderr, plain.levels[0].stderr);
    EXPECT_LT(std::abs(twirled.levels[0].mean - plain.levels[0].mean), 4 * se);
    EXPECT_NEAR(twirled.levels[0].mean, 4.0, 4 * twirled.levels[0].stderr);
}

TEST(Zne, TwirlingDoesNotShrinkVariance) {
    // Per seed: variance of per-repetition expectations with and without
    // twirling at r = 4. The claim fails only if a one-sided 95% bootstrap
    // bound shows the twirled variance to be smaller.
    const auto noise = NoiseConfig::from_device(qx2_device());
    std::vector<double> diff;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        ZneConfig cfg;
        cfg.rs = {1, 4};
        cfg.reps = 48;
        cfg.shots = 256;
        cfg.seed = seed;
        const auto var = [](const std::vector<double>& v) {
            const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
            double ss = 0.0;
            for (double x : v) ss += (x - m) * (x - m);
            return ss / static_cast<double>(v.size() - 1);
        };
        const double tw = var(zne_pipeline(example_showdown_qx2(), qx2_device(), noise, cfg).levels[1].expectations);
        cfg.twirl = false;
        const double plain = var(zne_pipeline(example_showdown_qx2(), qx2_device(), noise, cfg).levels[1].expectations);
        diff.push_back(tw - plain);
    }
    Rng rng(2020);
    std::vector<double> boot;
    for (int b = 0; b < 4000; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < diff.size(); ++i) s += diff[uniform_below(rng, diff.size())];
        boot.push_back(s / static_cast<double>(diff.size()));
    }
    std::sort(boot.begin(), boot.end());
    const double upper95 = boot[static_cast<std::size_t>(0.95 * boot.size())];
    EXPECT_GE(upper95, 0.0);
}

TEST(Zne, RepetitionCountSufficient) {
    const auto noise = NoiseConfig::from_device(qx2_device());
    ZneConfig cfg;
    cfg.rs = {1, 2};
    cfg.shots = 1024;
    cfg.seed = 17;
    cfg.reps = 512;
    const auto half = zne_pipeline(example_showdown_qx2(), qx2_device(), noise, cfg);
    cfg.reps = 1024;
    const auto full = zne_pipeline(example_showdown_qx2(), qx2_device(), noise, cfg);
    for (std::size_t k = 0; k < cfg.rs.size(); ++k) EXPECT_LT(std::abs(half.levels[k].mean - full.levels[k].mean), 0.02);
}

TEST(Zne, FilterUsesSuppliedCalibration) {
    ZneConfig cfg;
    cfg.rs = {1, 2};
    cfg.reps = 16;
    cfg.shots = 512;
    cfg.seed = 4;
    cfg.use_filter = true;
    NoiseConfig readout_only = NoiseConfig::ideal(5);
    readout_only.readout.assign(5, 0.05);
    const auto cal = tensor_readout_calibration(readout_only.readout);
    const auto filtered = zne_pipeline(example_showdown_qx2(), qx2_device(), readout_only, cfg, &cal);
    cfg.use_filter = false;
    const auto raw = zne_pipeline(example_showdown_qx2(), qx2_device(), readout_only, cfg);
    EXPECT_LT(std::abs(filtered.levels[0].mean - 4.0), std::abs(raw.levels[0].mean - 4.0));
    EXPECT_NEAR(filtered.levels[0].mean, 4.0, 0.05);
    ASSERT_TRUE(filtered.calibration.has_value());
}

TEST(Zne, RepetitionExpectation) {
    Counts counts(2);
    counts.add(0b00, 13);
    counts.add(0b01, 2);
    counts.add(0b10, 2);
    counts.add(0b11, 13);
    EXPECT_NEAR(repetition_expectation(counts, nullptr), 1.0, 1e-12);
    const auto cal = worked_example_p();
    EXPECT_NEAR(repetition_expectation(counts, &cal), 1.0, 1e-10);
}

TEST(Modes, SyntheticBimodal) {
    std::vector<double> values;
    Rng rng(1);
    for (int i = 0; i < 400; ++i) values.push_back(3.0 + 0.05 * (uniform01(rng) - 0.5));
    for (int i = 0; i < 300; ++i) values.push_back(2.0 + 0.05 * (uniform01(rng) - 0.5));
    const auto modes = histogram_modes(values, 0.1);
    ASSERT_EQ(modes.size(), 2u);
    EXPECT_NEAR(mode_spread(modes), 1.0, 0.15);

    const auto single = histogram_modes(std::vector<double>(100, 1.0), 0.1);
    EXPECT_EQ(single.size(), 1u);
    EXPECT_EQ(mode_spread(single), 0.0);
}
