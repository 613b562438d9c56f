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

// Reduced one-variable dynamics. For states N(|00> + zeta|11>) two protocol
// steps act as zeta -> g(zeta) = 2 zeta^2 / (1 + zeta^4), and g = f o f with
// f(zeta) = (1 - zeta^2) / (1 + zeta^2). After an odd number of steps the
// state is N(|00> + |11> + w(|01> + |10>)) with w the current f-iterate.

#include <string>
#include <vector>

#include "purify/riemann.hpp"

namespace purify {

/// Above this modulus evaluations switch to the chart w = 1/zeta.
inline constexpr double kChartSwitchModulus = 1e6;

RiemannPoint eval_f(const RiemannPoint &z);
RiemannPoint eval_g(const RiemannPoint &z);

/// f'(z) = -4z / (1 + z^2)^2. Throws std::domain_error at infinity and at the
/// poles +-i.
Complex derivative_f(const RiemannPoint &z);

/// Critical points of f: {0, infinity}.
std::vector<RiemannPoint> critical_points();

/// The first `length` points of the f-orbit of z, starting with z itself.
std::vector<RiemannPoint> orbit_f(const RiemannPoint &z, int length);

enum class CycleKind { Superattracting, Attracting, Indifferent, Repelling };

std::string to_string(CycleKind kind);

inline constexpr double kSuperattractingTolerance = 1e-12;
inline constexpr double kIndifferentTolerance = 1e-9;

/// |m| <= 1e-12 superattracting; ||m| - 1| <= 1e-9 indifferent.
CycleKind classify_multiplier(Complex multiplier);

struct CycleReport {
    int period;
    std::vector<RiemannPoint> points;
    Complex multiplier;
    CycleKind classification;
};

/// Product of f' along the cycle.
Complex cycle_multiplier(const std::vector<RiemannPoint> &points);

/// The three roots of zeta^3 + zeta^2 + zeta - 1 = 0, real root first.
std::vector<CycleReport> fixed_points_f();

struct CycleSearchOptions {
    int starts = 10000;
    double start_radius = 4.0;
    double dedup_tolerance = 1e-9;
    int newton_iterations = 200;
};

struct CycleSearchResult {
    /// Cycles of exact period 1..max_period, ordered by period.
    std::vector<CycleReport> cycles;
    /// Per period p, the number of distinct solutions of f^p(z) = z found
    /// and the number expected (2^p + 1 for a degree-two map).
    std::vector<int> found_points;
    std::vector<int> expected_points;
    bool complete() const;
};

/// Multi-start Newton search for periodic points of f. max_period must be in
/// [1, 6] (std::invalid_argument otherwise). Roots that could not be polished
/// show up as found_points < expected_points, see complete().
CycleSearchResult cycles_of_f(int max_period, const CycleSearchOptions &options = {});

struct Constants {
    /// a = (17 + 3 sqrt 33)^(1/3).
    double a;
    /// Real root of zeta^3 + zeta^2 + zeta = 1: the repelling fixed point
    /// bounding the even-zero interval around 0 on the real line.
    double zeta_A;
    /// Outer boundary of the odd-zero intervals, a preimage of -zeta_A.
    double zeta_B;
    /// Radius of the largest disk around 0 on which |g(zeta)| < |zeta|.
    double zeta_C;
};

/// zeta_A and zeta_B in closed form; zeta_C by an angular scan of |g| on
/// circles (4096 angles) and bisection on the radius.
Constants compute_constants();

enum class ParityLabel { EvenZero, OddZero, Unresolved };

std::string to_string(ParityLabel label);

struct ParityResult {
    ParityLabel label;
    /// Index of the first iterate inside the tol-ball around 0 (max_iters
    /// when unresolved).
    int steps;
};

/// Iterates f from z0 until an iterate falls within tol of 0 and reports the
/// parity of that index.
ParityResult iterate_reduced(const RiemannPoint &z0, int max_iters = 200, double tol = 1e-6);

}  // namespace purify
