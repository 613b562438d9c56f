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

// Seeded random states for self-checks and tests.

#include <random>

#include "purify/qstate.hpp"

namespace purify {

/// Haar-random pure state (normalized complex Gaussian vector).
PureState2Q random_pure_state(std::mt19937_64 &rng);

/// Hilbert-Schmidt random mixed state G G^dagger / Tr(G G^dagger) for a
/// complex Gaussian 4x4 matrix G.
DensityMatrix2Q random_mixed_state(std::mt19937_64 &rng);

/// Nearly |00><00| with the remaining diagonal entries and coherences of
/// order 10^-k for a random k in [8, 300].
DensityMatrix2Q random_near_diagonal_state(std::mt19937_64 &rng);

}  // namespace purify
