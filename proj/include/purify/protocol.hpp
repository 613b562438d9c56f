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

#pragma once

// One iteration of the purification protocol: pairs of identically prepared
// two-qubit systems are combined by bilateral CNOTs, the target pair is
// measured and the control pair is kept only when both outcomes are 0
// (selection step S), then the local unitary u (x) u is applied.

#include <vector>

#include "purify/qstate.hpp"

namespace purify {

inline constexpr double kUnitarityTolerance = 1e-10;

/// Single-qubit unitary u, applied as u (x) u. Defaults to the Hadamard gate
/// H_ij = (-1)^(i*j) / sqrt(2).
class LocalUnitary {
   public:
    LocalUnitary();
    /// Throws std::invalid_argument if ||u^dagger u - 1|| exceeds kUnitarityTolerance.
    static LocalUnitary checked(const Eigen::Matrix2cd &u);
    static LocalUnitary hadamard() {
        return LocalUnitary();
    }

    const Eigen::Matrix2cd &single() const {
        return single_;
    }
    /// u (x) u in the |00>,|01>,|10>,|11> basis.
    const Matrix4 &pair() const {
        return pair_;
    }

   private:
    explicit LocalUnitary(const Eigen::Matrix2cd &u);
    Eigen::Matrix2cd single_;
    Matrix4 pair_;
};

template <class State>
struct StepOutcome {
    State state;
    /// Probability that both target measurements yield 0 (trace of the
    /// selected state before renormalization).
    double success_probability;

    /// Fraction of the input ensemble that survives the step: half the pairs
    /// are consumed as targets, the rest survive with success_probability.
    double yield_factor() const {
        return 0.5 * success_probability;
    }
};

/// c_i -> N c_i^2.
StepOutcome<PureState2Q> selection_step(const PureState2Q &psi);
/// rho_ik -> rho_ik^2 / sum_j rho_jj^2 (entry-wise square, computational basis).
StepOutcome<DensityMatrix2Q> selection_step(const DensityMatrix2Q &rho);

PureState2Q apply_local_unitary(const PureState2Q &psi, const LocalUnitary &u);
DensityMatrix2Q apply_local_unitary(const DensityMatrix2Q &rho, const LocalUnitary &u);

/// U S applied once.
StepOutcome<PureState2Q> protocol_step(const PureState2Q &psi, const LocalUnitary &u = LocalUnitary());
StepOutcome<DensityMatrix2Q> protocol_step(const DensityMatrix2Q &rho, const LocalUnitary &u = LocalUnitary());

/// Brute-force reference for the mixed selection step. Builds rho (x) rho on
/// qubits (A1, A2, B1, B2), applies CNOT(A1 -> B1) and CNOT(A2 -> B2),
/// projects B1 = B2 = 0 and traces out B.
StepOutcome<DensityMatrix2Q> circuit_oracle(const DensityMatrix2Q &rho);

template <class State>
struct TrajectoryRecord {
    int step;
    State state;
    /// Entropy of the one-qubit marginal, in bits.
    double entropy;
    double purity;
    double success_probability;
    /// Product of yield factors up to and including this step.
    double cumulative_yield;
};

template <class State>
using Trajectory = std::vector<TrajectoryRecord<State>>;

/// Records states after steps 1..max_steps (the initial state is not recorded).
Trajectory<PureState2Q> run_trajectory(const PureState2Q &initial, const LocalUnitary &u, int max_steps);
Trajectory<DensityMatrix2Q> run_trajectory(const DensityMatrix2Q &initial, const LocalUnitary &u, int max_steps);

}  // namespace purify
