// Copyright 2026 The purify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "purify/complexdyn.hpp"
#include "purify/protocol.hpp"
#include "purify/random_states.hpp"
#include "test_support.hpp"

namespace purify {
namespace {

using testing::max_abs_diff;
using testing::outer;

PureState2Q from_amplitudes(Complex a, Complex b, Complex c, Complex d) {
    return PureState2Q::normalized(Amplitudes(a, b, c, d));
}

TEST(SelectionStepPure, Examples) {
    auto s00 = selection_step(basis_state(0));
    EXPECT_EQ(s00.state.amplitudes(), basis_state(0).amplitudes());
    EXPECT_DOUBLE_EQ(s00.success_probability, 1.0);

    auto bell = selection_step(bell_phi_plus());
    EXPECT_LT(trace_distance(bell.state, bell_phi_plus()), 1e-15);
    EXPECT_NEAR(bell.success_probability, 0.5, 1e-15);

    auto s = selection_step(from_amplitudes(std::sqrt(0.8), 0, 0, std::sqrt(0.2)));
    double n = std::sqrt(0.68);
    EXPECT_LT((s.state.amplitudes() - Amplitudes(0.8 / n, 0, 0, 0.2 / n)).norm(), 1e-15);
    EXPECT_NEAR(s.success_probability, 0.68, 1e-15);
    EXPECT_NEAR(s.yield_factor(), 0.34, 1e-15);
}

TEST(SelectionStepPure, SquaresAmplitudes) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 1000; i++) {
        PureState2Q psi = random_pure_state(rng);
        Amplitudes sq = psi.amplitudes().cwiseProduct(psi.amplitudes());
        double p = 0.0;
        for (int k = 0; k < 4; k++) {
            p += std::norm(psi[k]) * std::norm(psi[k]);
        }
        auto out = selection_step(psi);
        EXPECT_NEAR(out.success_probability, p, 1e-15);
        EXPECT_LT((out.state.amplitudes() - sq / std::sqrt(p)).norm(), 1e-13);
    }
}

TEST(SelectionStepMixed, Examples) {
    auto mm = selection_step(maximally_mixed());
    EXPECT_LT(max_abs_diff(mm.state.matrix(), Matrix4::Identity() * 0.25), 1e-16);
    EXPECT_NEAR(mm.success_probability, 0.25, 1e-16);

    std::mt19937_64 rng(22);
    for (int i = 0; i < 100; i++) {
        PureState2Q psi = random_pure_state(rng);
        auto mixed = selection_step(density_from_state(psi));
        auto pure = selection_step(psi);
        EXPECT_LT(max_abs_diff(mixed.state.matrix(), density_from_state(pure.state).matrix()), 1e-14);
        EXPECT_NEAR(mixed.success_probability, pure.success_probability, 1e-15);
    }

    Matrix4 r2 = Matrix4::Identity() * 0.25;
    r2(1, 2) = r2(2, 1) = 0.25;
    DensityMatrix2Q rho2 = DensityMatrix2Q::checked(r2);
    auto out = selection_step(rho2);
    EXPECT_LT(max_abs_diff(out.state.matrix(), r2), 1e-16);
    EXPECT_NEAR(out.success_probability, 0.25, 1e-16);
    auto oracle = circuit_oracle(rho2);
    EXPECT_LT(max_abs_diff(oracle.state.matrix(), r2), 1e-15);
    EXPECT_NEAR(oracle.success_probability, 0.25, 1e-15);
}

TEST(CircuitOracle, Examples) {
    auto mm = circuit_oracle(maximally_mixed());
    EXPECT_LT(max_abs_diff(mm.state.matrix(), Matrix4::Identity() * 0.25), 1e-15);
    EXPECT_NEAR(mm.success_probability, 0.25, 1e-15);

    Matrix4 d = Matrix4::Zero();
    d.diagonal() << 0.8, 0.2, 0.0, 0.0;
    auto out = circuit_oracle(DensityMatrix2Q::checked(d));
    Matrix4 expected = Matrix4::Zero();
    // diag(0.64, 0.04, 0, 0) / 0.68 from the oracle script.
    expected.diagonal() << 0.94117647058823528, 0.058823529411764705, 0.0, 0.0;
    EXPECT_LT(max_abs_diff(out.state.matrix(), expected), 1e-15);
    EXPECT_NEAR(out.success_probability, 0.68, 1e-15);
}

TEST(CircuitOracle, MatchesPureFormula) {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 300; i++) {
        PureState2Q psi = random_pure_state(rng);
        auto oracle = circuit_oracle(density_from_state(psi));
        auto pure = selection_step(psi);
        EXPECT_LT(max_abs_diff(oracle.state.matrix(), outer(pure.state.amplitudes())), 1e-12);
        EXPECT_NEAR(oracle.success_probability, pure.success_probability, 1e-12);
    }
}

TEST(CircuitOracle, MatchesMixedFormula) {
    std::mt19937_64 rng(24);
    double worst = 0.0;
    double worst_p = 0.0;
    for (int i = 0; i < 1000; i++) {
        DensityMatrix2Q rho = (i % 2) ? random_mixed_state(rng) : density_from_state(random_pure_state(rng));
        auto a = selection_step(rho);
        auto b = circuit_oracle(rho);
        worst = std::max(worst, max_abs_diff(a.state.matrix(), b.state.matrix()));
        worst_p = std::max(worst_p, std::abs(a.success_probability - b.success_probability));
    }
    EXPECT_LT(worst, 1e-10);
    EXPECT_LT(worst_p, 1e-12);
}

TEST(CircuitOracle, NearDiagonalStatesStayFinite) {
    std::mt19937_64 rng(25);
    for (int i = 0; i < 200; i++) {
        DensityMatrix2Q rho = random_near_diagonal_state(rng);
        auto a = selection_step(rho);
        auto b = circuit_oracle(rho);
        EXPECT_TRUE(a.state.matrix().allFinite());
        EXPECT_TRUE(b.state.matrix().allFinite());
        EXPECT_LT(max_abs_diff(a.state.matrix(), b.state.matrix()), 1e-10);
    }
}

TEST(LocalUnitary, Examples) {
    PureState2Q pp = apply_local_unitary(basis_state(0), LocalUnitary());
    EXPECT_LT((pp.amplitudes() - Amplitudes(0.5, 0.5, 0.5, 0.5)).norm(), 1e-15);
    EXPECT_LT((apply_local_unitary(bell_phi_plus(), LocalUnitary()).amplitudes() - bell_phi_plus().amplitudes()).norm(),
              1e-15);

    std::mt19937_64 rng(26);
    for (int i = 0; i < 200; i++) {
        PureState2Q psi = random_pure_state(rng);
        PureState2Q twice = apply_local_unitary(apply_local_unitary(psi, LocalUnitary()), LocalUnitary());
        EXPECT_LT((twice.amplitudes() - psi.amplitudes()).norm(), 1e-12);
        DensityMatrix2Q rho = random_mixed_state(rng);
        DensityMatrix2Q back = apply_local_unitary(apply_local_unitary(rho, LocalUnitary()), LocalUnitary());
        EXPECT_LT(max_abs_diff(back.matrix(), rho.matrix()), 1e-12);
    }
}

TEST(LocalUnitary, PairIsKroneckerProduct) {
    Eigen::Matrix2cd phase;
    phase << 1, 0, 0, Complex(0, 1);
    LocalUnitary u = LocalUnitary::checked(phase);
    EXPECT_LT(max_abs_diff(u.pair(), testing::kron(phase, phase)), 1e-16);
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    EXPECT_LT(max_abs_diff(LocalUnitary().pair(), testing::kron(h, h)), 1e-16);
}

TEST(LocalUnitary, RejectsNonUnitary) {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, 1.001;
    EXPECT_THROW(LocalUnitary::checked(m), std::invalid_argument);
    m << 1, 1, 0, 1;
    EXPECT_THROW(LocalUnitary::checked(m), std::invalid_argument);
}

TEST(ProtocolStep, Examples) {
    EXPECT_LT(trace_distance(protocol_step(bell_phi_plus()).state, bell_phi_plus()), 1e-15);
    EXPECT_LT(trace_distance(protocol_step(basis_state(0)).state, plus_plus()), 1e-15);
    EXPECT_LT(trace_distance(protocol_step(plus_plus()).state, basis_state(0)), 1e-15);

    auto half = protocol_step(state_from_zeta(RiemannPoint(0.5)));
    EXPECT_LT(trace_distance(half.state, from_amplitudes(1.0, 0.6, 0.6, 1.0)), 1e-15);
    // (1 + 0.5^4) / (1 + 0.5^2)^2
    EXPECT_NEAR(half.success_probability, 0.68, 1e-15);
}

TEST(ProtocolStep, MixedMatchesPure) {
    std::mt19937_64 rng(27);
    for (int i = 0; i < 500; i++) {
        PureState2Q psi = random_pure_state(rng);
        auto pure = protocol_step(psi);
        auto mixed = protocol_step(density_from_state(psi));
        EXPECT_LT(max_abs_diff(mixed.state.matrix(), outer(pure.state.amplitudes())), 1e-13);
        EXPECT_NEAR(mixed.success_probability, pure.success_probability, 1e-15);
    }
}

TEST(ProtocolStep, PreservesPurity) {
    std::mt19937_64 rng(28);
    double worst = 0.0;
    for (int i = 0; i < 100; i++) {
        DensityMatrix2Q rho = density_from_state(random_pure_state(rng));
        for (int step = 0; step < 100; step++) {
            rho = protocol_step(rho).state;
        }
        worst = std::max(worst, std::abs(purity(rho) - 1.0));
    }
    EXPECT_LT(worst, 1e-10);
}

TEST(ProtocolStep, PositivityAndTrace) {
    std::mt19937_64 rng(29);
    double min_eigenvalue = 1.0;
    double worst_trace = 0.0;
    double worst_norm = 0.0;
    for (int i = 0; i < 10000; i++) {
        auto out = protocol_step(random_mixed_state(rng));
        min_eigenvalue = std::min(min_eigenvalue, out.state.eigenvalues().minCoeff());
        worst_trace = std::max(worst_trace, std::abs(out.state.matrix().trace().real() - 1.0));
        auto pure = protocol_step(random_pure_state(rng));
        worst_norm = std::max(worst_norm, std::abs(pure.state.amplitudes().norm() - 1.0));
    }
    EXPECT_GE(min_eigenvalue, -1e-10);
    EXPECT_LT(worst_trace, 1e-12);
    EXPECT_LT(worst_norm, 1e-12);
}

TEST(ProtocolStep, SuccessProbabilityBounds) {
    std::mt19937_64 rng(30);
    for (int i = 0; i < 5000; i++) {
        double p = protocol_step(random_mixed_state(rng)).success_probability;
        EXPECT_GE(p, 0.25 - 1e-15);
        EXPECT_LT(p, 1.0);
    }
    for (int k = 0; k < 4; k++) {
        EXPECT_DOUBLE_EQ(protocol_step(basis_state(k)).success_probability, 1.0);
    }
    EXPECT_LT(protocol_step(plus_plus()).success_probability, 1.0);
}

TEST(ProtocolStep, FamilyClosure) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 1000; i++) {
        RiemannPoint z(testing::random_complex(rng, 3.0));
        PureState2Q once = protocol_step(state_from_zeta(z)).state;
        RiemannPoint w = eval_f(z);
        PureState2Q odd_form = w.is_infinity() ? from_amplitudes(0, 1, 1, 0)
                                               : from_amplitudes(1.0, w.value(), w.value(), 1.0);
        EXPECT_LT(trace_distance(once, odd_form), 1e-10);
        PureState2Q twice = protocol_step(once).state;
        EXPECT_LT(trace_distance(twice, state_from_zeta(eval_g(z))), 1e-10);
    }
}

TEST(RunTrajectory, BellFixedPoint) {
    auto t = run_trajectory(bell_phi_plus(), LocalUnitary(), 5);
    ASSERT_EQ(t.size(), 5u);
    for (size_t i = 0; i < t.size(); i++) {
        EXPECT_EQ(t[i].step, static_cast<int>(i) + 1);
        EXPECT_LT(trace_distance(t[i].state, bell_phi_plus()), 1e-15);
        EXPECT_NEAR(t[i].entropy, 1.0, 1e-14);
        EXPECT_NEAR(t[i].success_probability, 0.5, 1e-15);
        EXPECT_NEAR(t[i].cumulative_yield, std::pow(0.25, static_cast<double>(i + 1)), 1e-15);
    }
}

TEST(RunTrajectory, SeparableTwoCycle) {
    auto t = run_trajectory(basis_state(0), LocalUnitary(), 4);
    ASSERT_EQ(t.size(), 4u);
    for (size_t i = 0; i < t.size(); i++) {
        const PureState2Q &expected = (i % 2 == 0) ? plus_plus() : basis_state(0);
        EXPECT_LT(trace_distance(t[i].state, expected), 1e-15);
        EXPECT_NEAR(t[i].entropy, 0.0, 1e-15);
    }
}

TEST(RunTrajectory, StraddlingTheRepellingFixedPoint) {
    // 0.5436 < zeta_A = 0.54368901... < 0.5437
    auto below = run_trajectory(state_from_zeta(RiemannPoint(0.5436)), LocalUnitary(), 60);
    auto above = run_trajectory(state_from_zeta(RiemannPoint(0.5437)), LocalUnitary(), 60);
    const PureState2Q &end_below = below.back().state;
    const PureState2Q &end_above = above.back().state;
    double to_cycle = std::min(trace_distance(end_below, basis_state(0)), trace_distance(end_below, plus_plus()));
    EXPECT_LT(to_cycle, 1e-12);
    EXPECT_LT(trace_distance(end_above, bell_phi_plus()), 1e-12);
}

TEST(RunTrajectory, YieldIsCumulativeAndNonIncreasing) {
    std::mt19937_64 rng(32);
    auto t = run_trajectory(random_mixed_state(rng), LocalUnitary(), 30);
    double product = 1.0;
    double previous = 1.0;
    for (const auto &r : t) {
        product *= 0.5 * r.success_probability;
        EXPECT_NEAR(r.cumulative_yield, product, 1e-15);
        EXPECT_LE(r.cumulative_yield, previous);
        previous = r.cumulative_yield;
        EXPECT_NEAR(r.purity, purity(r.state), 1e-15);
    }
}

TEST(RunTrajectory, StepCounts) {
    EXPECT_TRUE(run_trajectory(bell_phi_plus(), LocalUnitary(), 0).empty());
    EXPECT_THROW(run_trajectory(bell_phi_plus(), LocalUnitary(), -1), std::invalid_argument);
    EXPECT_THROW(run_trajectory(maximally_mixed(), LocalUnitary(), -1), std::invalid_argument);
}

TEST(RunTrajectory, Deterministic) {
    std::mt19937_64 rng(33);
    DensityMatrix2Q rho = random_mixed_state(rng);
    auto a = run_trajectory(rho, LocalUnitary(), 40);
    auto b = run_trajectory(rho, LocalUnitary(), 40);
    for (size_t i = 0; i < a.size(); i++) {
        EXPECT_EQ(a[i].state.matrix(), b[i].state.matrix());
    }
}

}  // namespace
}  // namespace purify
