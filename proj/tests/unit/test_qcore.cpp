#include "../support/oracles.hpp"

#include <qpoker/circuit/library.hpp>
#include <qpoker/noisesim/noise.hpp>
#include <qpoker/qcore/density_matrix.hpp>
#include <qpoker/qcore/number_operator.hpp>
#include <qpoker/qcore/sampling.hpp>
#include <qpoker/qcore/simulate.hpp>
#include <qpoker/qcore/state_vector.hpp>

#include <gtest/gtest.h>

#include <bit>
#include <cmath>

using namespace qpoker;
using qpoker::testing::random_circuit;

namespace {

// Worked by hand: q4 leaves H,Z as |->, so CX(q4 -> q1) puts a minus sign
// between the two branches and the later X on q4 keeps it.
StateVector max_expected() {
    std::vector<Complex> amps(32);
    amps[0b01101] = -1.0 / std::sqrt(2.0);
    amps[0b11111] = 1.0 / std::sqrt(2.0);
    return StateVector::from_amplitudes(5, std::move(amps));
}

}  // namespace

TEST(Gates, PaperExamples) {
    EXPECT_NEAR(apply_gate(StateVector(1), Gate::x(0))[1].real(), 1.0, 1e-12);

    auto plus = apply_gate(StateVector(1), Gate::h(0));
    EXPECT_NEAR(plus[0].real(), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(plus[1].real(), 1 / std::sqrt(2.0), 1e-12);

    // |10> printed q1 q0, so the control q1 is set.
    auto out = apply_gate(StateVector::basis(2, 0b10), Gate::cx(1, 0));
    EXPECT_NEAR(std::norm(out[0b11]), 1.0, 1e-12);
}

TEST(Gates, TargetErrors) {
    StateVector psi(3);
    EXPECT_THROW(apply_gate(psi, Gate::x(3)), std::invalid_argument);
    EXPECT_THROW(apply_gate(psi, Gate::cx(1, 1)), std::invalid_argument);
    EXPECT_THROW(apply_gate(psi, Gate::x(-1)), std::invalid_argument);
    try {
        apply_gate(psi, Gate::x(7));
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("target out of range"), std::string::npos);
    }
}

TEST(Gates, EveryKindIsUnitary) {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const Gate g = qpoker::testing::random_gate(2, rng);
        const auto u = gate_unitary(g, 2);
        const double err = (u * u.adjoint() - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff();
        ASSERT_LT(err, 1e-10) << to_string(g.kind);
    }
}

TEST(Gates, FastPathsMatchDenseUnitary) {
    Rng rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(uniform_below(rng, 4));
        const Circuit c = random_circuit(n, 1, rng);
        const auto psi = run_circuit(random_circuit(n, 6, rng));
        const Eigen::VectorXcd dense = gate_unitary(c[0], n) * psi.to_eigen();
        const Eigen::VectorXcd fast = apply_gate(psi, c[0]).to_eigen();
        ASSERT_LT((dense - fast).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Simulation, MaxCircuit) {
    const auto psi = run_circuit(example_showdown());
    EXPECT_GE(fidelity(psi, max_expected()), 1.0 - 1e-10);
    EXPECT_NEAR(expectation_ones(psi.probabilities()), 4.0, 1e-12);
}

TEST(Simulation, EmptyCircuitKeepsInit) {
    const auto init = StateVector::basis(3, 5);
    EXPECT_EQ(fidelity(run_circuit(Circuit(3), init), init), 1.0);
}

TEST(Simulation, WidthMismatch) { EXPECT_THROW(run_circuit(Circuit(3), StateVector(2)), std::invalid_argument); }

TEST(Simulation, NormPreservedOnRandomCircuits) {
    Rng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(uniform_below(rng, 5));
        const int gates = static_cast<int>(uniform_below(rng, 51));
        const auto psi = run_circuit(random_circuit(n, gates, rng));
        ASSERT_NEAR(psi.norm_squared(), 1.0, 1e-10);
    }
}

TEST(Simulation, CircuitThenInverseIsIdentity) {
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(uniform_below(rng, 5));
        const Circuit c = random_circuit(n, 30, rng);
        const auto psi = run_circuit(compose(c, inverse(c)));
        ASSERT_NEAR(fidelity(psi, StateVector(n)), 1.0, 1e-10);
    }
}

TEST(Sampling, DeterministicState) {
    Rng rng(1);
    const auto counts = sample(StateVector::basis(5, 0b01101), 100, rng);
    const auto by = counts.by_bit_string();
    ASSERT_EQ(by.size(), 1u);
    EXPECT_EQ(by.at("01101"), 100u);
}

TEST(Sampling, MaxStateHalves) {
    Rng rng(8192);
    const auto counts = sample(run_circuit(example_showdown()), 8192, rng);
    EXPECT_NEAR(static_cast<double>(counts[0b01101]), 4096.0, 250.0);
    EXPECT_NEAR(static_cast<double>(counts[0b11111]), 4096.0, 250.0);
    EXPECT_EQ(counts[0b01101] + counts[0b11111], 8192u);
}

TEST(Sampling, PlusStateFraction) {
    Rng rng(3);
    const auto counts = sample(apply_gate(StateVector(1), Gate::h(0)), 100000, rng);
    EXPECT_NEAR(static_cast<double>(counts[1]) / 1e5, 0.5, 0.005);
}

TEST(Sampling, ZeroShotsRejected) {
    Rng rng(0);
    EXPECT_THROW(sample(StateVector(2), 0, rng), std::invalid_argument);
}

TEST(Sampling, SeedDeterminism) {
    const auto psi = run_circuit(example_showdown());
    Rng a(77), b(77);
    EXPECT_EQ(sample(psi, 5000, a), sample(psi, 5000, b));
}

TEST(Sampling, TotalVariationWithinBound) {
    Rng circuits(404);
    for (int trial = 0; trial < 10; ++trial) {
        const auto psi = run_circuit(random_circuit(4, 20, circuits));
        Rng rng(1000 + static_cast<std::uint64_t>(trial));
        const auto counts = sample(psi, 100000, rng);
        const auto p = psi.probabilities();
        const auto q = counts.distribution();
        double tv = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
        EXPECT_LT(tv / 2.0, 0.02);
    }
}

TEST(Sampling, BitStringRoundTrip) {
    EXPECT_EQ(bit_string(0b01101, 5), "01101");
    EXPECT_EQ(parse_bit_string("01101"), 0b01101u);
    EXPECT_THROW(parse_bit_string("01a"), std::invalid_argument);
    EXPECT_THROW(parse_bit_string(""), std::invalid_argument);
}

TEST(Expectation, Examples) {
    std::vector<double> all_zero(32, 0.0);
    all_zero[0] = 1.0;
    EXPECT_EQ(expectation_ones(all_zero), 0.0);
    EXPECT_DOUBLE_EQ(expectation_ones(std::vector<double>{1, 1, 1, 1}), 1.0);
    EXPECT_THROW(expectation_ones(std::vector<double>{}), std::invalid_argument);
    EXPECT_THROW(expectation_ones(std::vector<double>{0, 0}), std::invalid_argument);
}

TEST(Expectation, MatchesOperatorQuadrature) {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const auto psi = run_circuit(random_circuit(5, 25, rng));
        const Eigen::VectorXcd v = psi.to_eigen();
        const double quad = (v.adjoint() * build_number_operator(5).dense() * v)(0, 0).real();
        ASSERT_NEAR(expectation_ones(psi.probabilities()), quad, 1e-10);
    }
}

TEST(NumberOperator, SmallCases) {
    EXPECT_EQ(build_number_operator(1).diag, (std::vector<int>{0, 1}));
    EXPECT_EQ(build_number_operator(2).diag, (std::vector<int>{0, 1, 1, 2}));
    const auto two = number_operator_second_quantized(2);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
    expected.diagonal() << 0, 1, 1, 2;
    EXPECT_LT((two - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(NumberOperator, ConstructionsAgree) {
    for (int n = 1; n <= 5; ++n) {
        const auto diff = (build_number_operator(n).dense() - number_operator_second_quantized(n)).cwiseAbs().maxCoeff();
        EXPECT_LT(diff, 1e-12) << "n=" << n;
    }
}

TEST(NumberOperator, DiagonalInvariants) {
    for (int n = 1; n <= 8; ++n) {
        const auto op = build_number_operator(n);
        EXPECT_EQ(op.diag.front(), 0);
        EXPECT_EQ(op.diag.back(), n);
        // Reversing the bit order is a qubit permutation; popcount must not change.
        for (std::uint64_t i = 0; i < op.diag.size(); ++i) {
            std::uint64_t rev = 0;
            for (int b = 0; b < n; ++b)
                if (i >> b & 1) rev |= 1ULL << (n - 1 - b);
            ASSERT_EQ(op.diag[i], op.diag[rev]);
        }
    }
    EXPECT_THROW(build_number_operator(0), std::invalid_argument);
    EXPECT_THROW(build_number_operator(9), std::invalid_argument);
}

TEST(NumberOperator, CanonicalAnticommutation) {
    const int n = 3;
    const auto id = Eigen::MatrixXcd::Identity(8, 8);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Eigen::MatrixXcd ai = creation_operator(i, n).adjoint();
            const Eigen::MatrixXcd aj_dag = creation_operator(j, n);
            const Eigen::MatrixXcd anti = ai * aj_dag + aj_dag * ai;
            const Eigen::MatrixXcd expected = (i == j) ? Eigen::MatrixXcd(id) : Eigen::MatrixXcd::Zero(8, 8);
            ASSERT_LT((anti - expected).cwiseAbs().maxCoeff(), 1e-12) << i << "," << j;
        }
    }
}

TEST(Channels, AmplitudeDamping) {
    const auto one = DensityMatrix::from_state(StateVector::basis(1, 1));
    const auto full = apply_channel(one, amplitude_damping_kraus(1.0), 0);
    EXPECT_NEAR(full.matrix()(0, 0).real(), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(full.matrix()(1, 1)), 0.0, 1e-12);

    const auto none = apply_channel(one, amplitude_damping_kraus(0.0), 0);
    EXPECT_LT((none.matrix() - one.matrix()).cwiseAbs().maxCoeff(), 1e-12);

    const auto half = apply_channel(one, amplitude_damping_kraus(0.5), 0);
    EXPECT_NEAR(half.matrix()(0, 0).real(), 0.5, 1e-12);
    EXPECT_NEAR(half.matrix()(1, 1).real(), 0.5, 1e-12);
}

TEST(Channels, NonTracePreservingRejected) {
    KrausSet bad{Eigen::MatrixXcd::Identity(2, 2) * 0.5};
    EXPECT_THROW(check_trace_preserving(bad), std::invalid_argument);
    EXPECT_THROW(apply_channel(DensityMatrix(1), bad, 0), std::invalid_argument);
}

TEST(Channels, RandomKrausPreservesTraceAndHermiticity) {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        // K_i = U_i sqrt(w_i) with random unitaries and weights summing to 1.
        const int k = 1 + static_cast<int>(uniform_below(rng, 4));
        std::vector<double> w(k);
        double total = 0.0;
        for (auto& x : w) total += (x = uniform01(rng) + 0.01);
        KrausSet kraus;
        for (int i = 0; i < k; ++i)
            kraus.push_back(circuit_unitary(random_circuit(2, 8, rng)) * std::sqrt(w[i] / total));
        const auto rho = DensityMatrix::from_state(run_circuit(random_circuit(2, 10, rng)));
        const auto out = apply_channel(rho, kraus);
        ASSERT_NEAR(out.trace(), 1.0, 1e-10);
        ASSERT_TRUE(is_valid_density(out.matrix()));
    }
}

TEST(DensityMatrix, RejectsInvalid) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 0.7;
    EXPECT_THROW(DensityMatrix::from_matrix(1, m), std::invalid_argument);
    m(1, 1) = 0.3;
    EXPECT_NO_THROW(DensityMatrix::from_matrix(1, m));
    m(0, 1) = 0.9;
    EXPECT_THROW(DensityMatrix::from_matrix(1, m), std::invalid_argument);
}

TEST(DensityMatrix, UnitaryMatchesStateVector) {
    Rng rng(8);
    const Circuit c = random_circuit(3, 20, rng);
    DensityMatrix rho(3);
    for (const auto& g : c.ops()) rho.apply_unitary(g);
    const auto psi = run_circuit(c);
    const auto p = rho.probabilities();
    const auto q = psi.probabilities();
    for (std::size_t i = 0; i < p.size(); ++i) ASSERT_NEAR(p[i], q[i], 1e-12);
    EXPECT_NEAR(rho.purity(), 1.0, 1e-10);
}

TEST(ReducedPurity, Examples) {
    const auto product = StateVector::basis(5, 0b01101);
    for (int q = 0; q < 5; ++q) EXPECT_NEAR(reduced_purity(product, q), 1.0, 1e-12);

    const auto bell = run_circuit(Circuit(2, {Gate::h(0), Gate::cx(0, 1)}));
    EXPECT_NEAR(reduced_purity(bell, 0), 0.5, 1e-12);
    EXPECT_NEAR(reduced_purity(bell, 1), 0.5, 1e-12);

    // Max's branches |01101> and |11111> differ on q1 and q4; q3 is 1 in both.
    const auto max = run_circuit(example_showdown());
    EXPECT_NEAR(reduced_purity(max, 1), 0.5, 1e-12);
    EXPECT_NEAR(reduced_purity(max, 4), 0.5, 1e-12);
    EXPECT_NEAR(reduced_purity(max, 3), 1.0, 1e-12);
    EXPECT_THROW(reduced_purity(max, 5), std::invalid_argument);
}

TEST(Rng, ForkSeedStreamsDiffer) {
    EXPECT_NE(fork_seed(1, 0), fork_seed(1, 1));
    EXPECT_NE(fork_seed(1, 0), fork_seed(2, 0));
    EXPECT_EQ(fork_seed(42, 7), fork_seed(42, 7));
}
