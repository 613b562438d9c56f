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

// Fano (generalized Pauli) coordinates of two-qubit density matrices,
// r_{mu nu} = Tr[rho (sigma_mu (x) sigma_nu)] with sigma_0 = 1, x, y, z, and
// linear stability of periodic orbits of the protocol map in these
// coordinates.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "purify/protocol.hpp"

namespace purify {

/// 16 real coefficients indexed 4*mu + nu, mu, nu in {0: 1, 1: x, 2: y, 3: z}.
struct FanoVector {
    std::array<double, 16> r{};

    double operator()(int mu, int nu) const {
        return r[4 * mu + nu];
    }
    bool operator==(const FanoVector &) const = default;
};

/// sigma_mu (x) sigma_nu for index 4*mu + nu.
const Matrix4 &pauli_product(int index);

FanoVector to_fano(const DensityMatrix2Q &rho);
/// rho = 1/4 sum_{mu nu} r_{mu nu} sigma_mu (x) sigma_nu. Throws
/// std::invalid_argument if |r_00 - 1| > 1e-9. The result is Hermitian but
/// not necessarily positive.
DensityMatrix2Q from_fano(const FanoVector &v);

/// to_fano(protocol_step(from_fano(v))).
FanoVector step_fano(const FanoVector &v, const LocalUnitary &u = LocalUnitary());

using Jacobian15 = Eigen::Matrix<double, 15, 15>;

/// Central finite-difference Jacobian of one period of step_fano around the
/// given cycle, in the 15 coordinates with r_00 excluded. The per-point
/// Jacobians are chained in orbit order. h must lie in [1e-8, 1e-4]. Throws
/// std::invalid_argument if the points do not close within trace distance
/// 1e-9 or h is out of range, and std::runtime_error if a perturbed
/// evaluation is not finite.
Jacobian15 jacobian_cycle(const std::vector<FanoVector> &points, double h = 1e-6,
                          const LocalUnitary &u = LocalUnitary());

/// Eigenvalue magnitudes of a Jacobian, sorted descending.
std::vector<double> eigenvalue_magnitudes(const Jacobian15 &jacobian);

inline constexpr double kStabilityMargin = 1e-9;

enum class AttractorKind {
    /// Pure maximally entangled fixed point.
    Bell,
    /// Cycle of pure product states.
    SeparableCycle,
    /// Mixed cycle other than the maximally mixed state.
    MixedCycle,
    /// The fixed point 1/4.
    MaximallyMixed,
    Other,
};

std::string to_string(AttractorKind kind);

struct StabilityReport {
    std::vector<DensityMatrix2Q> cycle;
    int period;
    std::vector<double> eigenvalue_magnitudes;
    /// All magnitudes below 1 - kStabilityMargin.
    bool stable;
    /// trace_distance(step^period(x), x) at the first cycle point.
    double closure;
    AttractorKind kind;
    /// Index of the first seed that reached this cycle.
    int first_seed;
    int seed_hits;
};

/// Classifies a cycle by purity and entanglement of its members.
AttractorKind classify_attractor(const std::vector<DensityMatrix2Q> &cycle);

struct MixedCycleSearchOptions {
    /// Mixing parameters of the Werner-family seeds rho(zeta, lambda).
    std::vector<double> lambdas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    /// zeta seeds per lambda; quasi-random (Halton) in [-2, 2]^2.
    int seeds_per_lambda = 64;
    /// Offset into the Halton sequence.
    int seed_offset = 0;
    int max_period = 4;
    /// Trace-distance threshold for periodicity detection.
    double tol = 1e-9;
    int max_steps = 3000;
    /// Consecutive matching steps required to accept a period.
    int sustain = 10;
    double jacobian_h = 1e-6;
    /// Cycles closer than this (minimal matching trace distance) are merged.
    double dedup_tolerance = 1e-6;
    /// Keep cycles whose Jacobian has a magnitude >= 1 and also seed the
    /// exact fixed point 1/4 (lambda = 0).
    bool include_unstable = false;
    int threads = 0;
    LocalUnitary unitary;
};

struct SeedFailure {
    int seed;
    double lambda;
    RiemannPoint zeta;
};

struct MixedCycleSearchResult {
    std::vector<StabilityReport> cycles;
    std::vector<SeedFailure> unresolved;
    int seeds = 0;
};

/// Iterates Werner-family seeds until periodicity is sustained, polishes the
/// cycle by further iteration and classifies it through jacobian_cycle.
/// Seeds run in parallel; the merge follows seed order, so the result does
/// not depend on the thread count.
MixedCycleSearchResult find_mixed_cycles(const MixedCycleSearchOptions &options = {});

/// The separable mixed state (|00><00| + |11><11|) / 2.
DensityMatrix2Q separable_mixed_rho1();
/// (|00><00| + |11><11| + (|01> + |10>)(<01| + <10|)) / 4, i.e. the direct
/// image of rho1 with its |00><11| coherence removed.
DensityMatrix2Q incoherent_rho2();

/// How the partner of rho1 in a computed 2-cycle compares with
/// incoherent_rho2().
struct PartnerDiagnostics {
    DensityMatrix2Q partner;
    double distance_to_rho1;
    double distance_to_incoherent_rho2;
    double diagonal_deviation;
    double cross_block_deviation;
    /// partner(|00>, |11>) entry.
    Complex coherence_00_11;
};

/// Requires a period-2 cycle; throws std::invalid_argument otherwise. The
/// member closest to rho1 is taken as rho1, the other as partner.
PartnerDiagnostics partner_diagnostics(const StabilityReport &cycle);

}  // namespace purify
