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

#include "purify/protocol.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace purify {

namespace {

Matrix4 kron_self(const Eigen::Matrix2cd &u) {
    Matrix4 out;
    for (int a = 0; a < 2; a++) {
        for (int b = 0; b < 2; b++) {
            for (int c = 0; c < 2; c++) {
                for (int d = 0; d < 2; d++) {
                    out(2 * a + b, 2 * c + d) = u(a, c) * u(b, d);
                }
            }
        }
    }
    return out;
}

Eigen::Matrix2cd hadamard_matrix() {
    Eigen::Matrix2cd h;
    double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
}

}  // namespace

LocalUnitary::LocalUnitary() : LocalUnitary(hadamard_matrix()) {
}

LocalUnitary::LocalUnitary(const Eigen::Matrix2cd &u) : single_(u), pair_(kron_self(u)) {
}

LocalUnitary LocalUnitary::checked(const Eigen::Matrix2cd &u) {
    if (!u.allFinite()) {
        throw std::invalid_argument("LocalUnitary: non-finite entries");
    }
    double residual = (u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    if (residual > kUnitarityTolerance) {
        throw std::invalid_argument("LocalUnitary: matrix is not unitary (residual " + std::to_string(residual) + ")");
    }
    return LocalUnitary(u);
}

StepOutcome<PureState2Q> selection_step(const PureState2Q &psi) {
    Amplitudes squared = psi.amplitudes().array().square();
    // |c_i^2|^2 = |c_i|^4; at least 1/4 for a normalized input.
    double p = squared.squaredNorm();
    return {PureState2Q::normalized(squared), p};
}

StepOutcome<DensityMatrix2Q> selection_step(const DensityMatrix2Q &rho) {
    const Matrix4 &m = rho.matrix();
    double p = 0.0;
    for (int j = 0; j < 4; j++) {
        p += std::norm(m(j, j));
    }
    if (!(p > 0.0)) {
        throw std::invalid_argument("selection_step: diagonal is identically zero");
    }
    Matrix4 out = m.array().square().matrix() / p;
    return {DensityMatrix2Q::unchecked(out), p};
}

PureState2Q apply_local_unitary(const PureState2Q &psi, const LocalUnitary &u) {
    return PureState2Q::normalized(u.pair() * psi.amplitudes());
}

DensityMatrix2Q apply_local_unitary(const DensityMatrix2Q &rho, const LocalUnitary &u) {
    Matrix4 out = u.pair() * rho.matrix() * u.pair().adjoint();
    // Restore exact Hermiticity lost to rounding.
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityMatrix2Q::unchecked(out);
}

StepOutcome<PureState2Q> protocol_step(const PureState2Q &psi, const LocalUnitary &u) {
    auto selected = selection_step(psi);
    return {apply_local_unitary(selected.state, u), selected.success_probability};
}

StepOutcome<DensityMatrix2Q> protocol_step(const DensityMatrix2Q &rho, const LocalUnitary &u) {
    auto selected = selection_step(rho);
    return {apply_local_unitary(selected.state, u), selected.success_probability};
}

StepOutcome<DensityMatrix2Q> circuit_oracle(const DensityMatrix2Q &rho) {
    using Matrix16 = Eigen::Matrix<Complex, 16, 16>;
    // Qubit order A1 A2 B1 B2, most significant first, so rho (x) rho is the
    // plain Kronecker product of the kept pair A with the sacrificed pair B.
    Matrix16 joint;
    for (int i = 0; i < 4; i++) {
        for (int k = 0; k < 4; k++) {
            joint.block<4, 4>(4 * i, 4 * k) = rho(i, k) * rho.matrix();
        }
    }
    Matrix16 cnots = Matrix16::Zero();
    for (int src = 0; src < 16; src++) {
        int a1 = (src >> 3) & 1, a2 = (src >> 2) & 1, b1 = (src >> 1) & 1, b2 = src & 1;
        int dst = (a1 << 3) | (a2 << 2) | ((b1 ^ a1) << 1) | (b2 ^ a2);
        cnots(dst, src) = 1.0;
    }
    Matrix16 evolved = cnots * joint * cnots.adjoint();
    // Project B1 = B2 = 0 and trace out B: keep rows/cols with low bits 00.
    Matrix4 kept;
    for (int i = 0; i < 4; i++) {
        for (int k = 0; k < 4; k++) {
            kept(i, k) = evolved(4 * i, 4 * k);
        }
    }
    double p = kept.trace().real();
    return {DensityMatrix2Q::unchecked(kept / p), p};
}

namespace {

double record_entropy(const PureState2Q &psi) {
    return entanglement_entropy(psi);
}
double record_entropy(const DensityMatrix2Q &rho) {
    return reduced_entropy(rho);
}
double record_purity(const PureState2Q &) {
    return 1.0;
}
double record_purity(const DensityMatrix2Q &rho) {
    return purity(rho);
}

template <class State>
Trajectory<State> run_trajectory_impl(const State &initial, const LocalUnitary &u, int max_steps) {
    if (max_steps < 0) {
        throw std::invalid_argument("run_trajectory: max_steps must be non-negative");
    }
    Trajectory<State> out;
    out.reserve(max_steps);
    State state = initial;
    double yield = 1.0;
    for (int step = 1; step <= max_steps; step++) {
        auto next = protocol_step(state, u);
        yield *= next.yield_factor();
        state = next.state;
        out.push_back({step, state, record_entropy(state), record_purity(state), next.success_probability, yield});
    }
    return out;
}

}  // namespace

Trajectory<PureState2Q> run_trajectory(const PureState2Q &initial, const LocalUnitary &u, int max_steps) {
    return run_trajectory_impl(initial, u, max_steps);
}

Trajectory<DensityMatrix2Q> run_trajectory(const DensityMatrix2Q &initial, const LocalUnitary &u, int max_steps) {
    return run_trajectory_impl(initial, u, max_steps);
}

}  // namespace purify
