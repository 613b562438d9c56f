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

// Basins of attraction of the protocol over a rectangle of the zeta-plane,
// for initial states rho(zeta, lambda) = lambda |Psi(zeta)><Psi(zeta)| +
// (1 - lambda)/4 * 1.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "purify/fano.hpp"

namespace purify {

enum class BasinLabel : std::uint8_t { Bell, SeparableCycle, MixedCycle, Unresolved };

/// "bell", "separable", "mixed", "unresolved".
std::string to_string(BasinLabel label);

/// Why a cell ended up Unresolved.
enum class Diagnostic : std::uint8_t { None, NoConvergence, MaximallyMixed, OtherAttractor };

std::string to_string(Diagnostic diagnostic);

struct GridSpec {
    double re_min = -2.0;
    double re_max = 2.0;
    double im_min = -2.0;
    double im_max = 2.0;
    int width = 512;
    int height = 512;
    double lambda = 1.0;
    int max_iters = 200;
    double tol = 1e-4;
    /// Classify 2x2 sub-samples per cell and take the majority label.
    bool supersample = false;

    /// Throws std::invalid_argument on an empty or inverted viewport,
    /// non-positive size/tolerance or lambda outside [0, 1].
    void validate() const;
    /// Center of cell (col, row); row 0 is the top edge (im_max).
    RiemannPoint cell_center(int col, int row) const;
};

struct AttractorTarget {
    BasinLabel label;
    Diagnostic diagnostic;
    std::vector<DensityMatrix2Q> members;
};

/// Cycles a trajectory is tested against.
struct AttractorTargets {
    std::vector<AttractorTarget> targets;
};

/// Exact pure attractors: the Bell fixed point and {|00>, |++>}.
AttractorTargets pure_targets();

/// Stable cycles found by find_mixed_cycles(options), labelled by kind.
AttractorTargets mixed_targets(const MixedCycleSearchOptions &options = {});

/// Targets for a given lambda, computed at most once per process for the
/// mixed case.
const AttractorTargets &default_targets(double lambda);

struct PointClassification {
    BasinLabel label;
    /// First iteration at which the state was within tol of the attractor.
    int steps;
    Diagnostic diagnostic;
};

/// Iterates the protocol from rho(zeta, lambda) (the pure state when
/// lambda = 1) and returns the first attractor approached within tol in trace
/// distance and still within tol one full period later. With lambda = 1 and
/// the default targets the iteration runs on state vectors.
PointClassification classify_point(const RiemannPoint &zeta, double lambda, int max_iters, double tol,
                                   const AttractorTargets &targets);
PointClassification classify_point(const RiemannPoint &zeta, double lambda, int max_iters = 200, double tol = 1e-4);

struct BasinGrid {
    GridSpec spec;
    /// Row-major, row 0 at the top.
    std::vector<BasinLabel> labels;
    std::vector<int> steps;

    BasinLabel label(int col, int row) const {
        return labels[static_cast<size_t>(row) * spec.width + col];
    }
    /// Cell counts indexed by BasinLabel.
    std::array<long long, 4> counts() const;
};

struct BasinOptions {
    int threads = 0;
    /// Overrides default_targets(spec.lambda).
    const AttractorTargets *targets = nullptr;
    /// Called with the number of finished rows, possibly from several threads.
    std::function<void(int)> on_row_done;
};

/// Classifies every cell center. Rows are distributed over workers and every
/// row is written by exactly one worker, so the result does not depend on
/// the number of threads.
BasinGrid compute_basin(const GridSpec &spec, const BasinOptions &options = {});

/// Binary PPM (P6, maxval 255), header "P6\n<w> <h>\n255\n". Bell (0,0,255),
/// separable (0,160,0), mixed (255,220,0), unresolved (0,0,0).
std::string render_ppm(const BasinGrid &grid);

/// CSV with header `re,im,label,steps`, one row per cell from the top-left,
/// coordinates with 9 significant digits.
std::string render_csv(const BasinGrid &grid);

struct DimensionEstimate {
    double dimension;
    /// Coefficient of determination of the log-log fit.
    double r2;
    /// (box size in cells, occupied boxes).
    std::vector<std::pair<int, long long>> boxes;
};

/// Cells with a differently-labelled 4-neighbour.
std::vector<bool> boundary_cells(const BasinGrid &grid);

/// Box-counting dimension of the boundary cells over dyadic box sizes from
/// 2 cells (1 on grids narrower than 16) up to a quarter of the shorter grid
/// side. Each count is the smallest over a 4x4 set of box-grid shifts.
/// Throws std::invalid_argument for a grid with a single label.
DimensionEstimate boundary_dimension(const BasinGrid &grid);

struct SensitivityResult {
    /// Distinct attractor labels among resolved samples.
    int distinct_labels;
    /// Smallest distance between two samples with different resolved labels
    /// (infinity if there is only one label).
    double min_separation_with_distinct_labels;
    std::array<int, 4> counts;
};

/// Classifies `samples` uniformly random points of the disk |zeta - center| <
/// radius. Throws std::invalid_argument for radius <= 0, samples < 2 or an
/// infinite center.
SensitivityResult sensitivity_probe(const RiemannPoint &center, double radius, double lambda, int samples,
                                    std::uint64_t seed = 1, int max_iters = 200, double tol = 1e-4);

}  // namespace purify
