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

#include "purify/basin.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "purify/parallel.hpp"

namespace purify {

std::string to_string(BasinLabel label) {
    switch (label) {
        case BasinLabel::Bell:
            return "bell";
        case BasinLabel::SeparableCycle:
            return "separable";
        case BasinLabel::MixedCycle:
            return "mixed";
        case BasinLabel::Unresolved:
            return "unresolved";
    }
    return "unknown";
}

std::string to_string(Diagnostic diagnostic) {
    switch (diagnostic) {
        case Diagnostic::None:
            return "none";
        case Diagnostic::NoConvergence:
            return "no_convergence";
        case Diagnostic::MaximallyMixed:
            return "maximally_mixed";
        case Diagnostic::OtherAttractor:
            return "other_attractor";
    }
    return "unknown";
}

void GridSpec::validate() const {
    if (!(re_min < re_max) || !(im_min < im_max)) {
        throw std::invalid_argument("GridSpec: viewport must satisfy re_min < re_max and im_min < im_max");
    }
    if (!std::isfinite(re_min) || !std::isfinite(re_max) || !std::isfinite(im_min) || !std::isfinite(im_max)) {
        throw std::invalid_argument("GridSpec: viewport must be finite");
    }
    if (width < 1 || height < 1) {
        throw std::invalid_argument("GridSpec: width and height must be positive");
    }
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("GridSpec: lambda must lie in [0, 1]");
    }
    if (max_iters < 1) {
        throw std::invalid_argument("GridSpec: max_iters must be positive");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("GridSpec: tol must be positive");
    }
}

RiemannPoint GridSpec::cell_center(int col, int row) const {
    double re = re_min + (col + 0.5) * (re_max - re_min) / width;
    double im = im_max - (row + 0.5) * (im_max - im_min) / height;
    return RiemannPoint(Complex{re, im});
}

AttractorTargets pure_targets() {
    AttractorTargets out;
    out.targets.push_back({BasinLabel::Bell, Diagnostic::None, {density_from_state(bell_phi_plus())}});
    out.targets.push_back({BasinLabel::SeparableCycle,
                           Diagnostic::None,
                           {density_from_state(basis_state(0)), density_from_state(plus_plus())}});
    return out;
}

AttractorTargets mixed_targets(const MixedCycleSearchOptions &options) {
    AttractorTargets out;
    for (const StabilityReport &report : find_mixed_cycles(options).cycles) {
        if (!report.stable) {
            continue;
        }
        AttractorTarget target{BasinLabel::Unresolved, Diagnostic::OtherAttractor, report.cycle};
        switch (report.kind) {
            case AttractorKind::Bell:
                target.label = BasinLabel::Bell;
                target.diagnostic = Diagnostic::None;
                break;
            case AttractorKind::SeparableCycle:
                target.label = BasinLabel::SeparableCycle;
                target.diagnostic = Diagnostic::None;
                break;
            case AttractorKind::MixedCycle:
                target.label = BasinLabel::MixedCycle;
                target.diagnostic = Diagnostic::None;
                break;
            case AttractorKind::MaximallyMixed:
                target.diagnostic = Diagnostic::MaximallyMixed;
                break;
            case AttractorKind::Other:
                break;
        }
        out.targets.push_back(std::move(target));
    }
    return out;
}

const AttractorTargets &default_targets(double lambda) {
    if (lambda >= 1.0) {
        static const AttractorTargets pure = pure_targets();
        return pure;
    }
    static std::once_flag once;
    static AttractorTargets mixed;
    std::call_once(once, [] { mixed = mixed_targets(); });
    return mixed;
}

namespace {

struct PureTarget {
    BasinLabel label;
    std::vector<PureState2Q> members;
};

PointClassification classify_pure(const RiemannPoint &zeta, int max_iters, double tol) {
    static const std::vector<PureTarget> targets = {
        {BasinLabel::Bell, {bell_phi_plus()}},
        {BasinLabel::SeparableCycle, {basis_state(0), plus_plus()}},
    };
    const LocalUnitary u;
    auto near = [&](const PureState2Q &psi, const PureTarget &target) {
        return std::any_of(target.members.begin(), target.members.end(),
                           [&](const PureState2Q &m) { return trace_distance(psi, m) < tol; });
    };
    PureState2Q psi = state_from_zeta(zeta);
    for (int k = 0; k <= max_iters; k++) {
        for (const PureTarget &target : targets) {
            if (!near(psi, target)) {
                continue;
            }
            PureState2Q later = psi;
            for (size_t j = 0; j < target.members.size(); j++) {
                later = protocol_step(later, u).state;
            }
            if (near(later, target)) {
                return {target.label, k, Diagnostic::None};
            }
        }
        psi = protocol_step(psi, u).state;
    }
    return {BasinLabel::Unresolved, max_iters, Diagnostic::NoConvergence};
}

PointClassification classify_mixed(const RiemannPoint &zeta, double lambda, int max_iters, double tol,
                                   const AttractorTargets &targets) {
    const LocalUnitary u;
    auto near = [&](const DensityMatrix2Q &rho, const AttractorTarget &target) {
        return std::any_of(target.members.begin(), target.members.end(),
                           [&](const DensityMatrix2Q &m) { return trace_distance_below(rho, m, tol); });
    };
    DensityMatrix2Q rho = werner_mix(zeta, lambda);
    for (int k = 0; k <= max_iters; k++) {
        for (const AttractorTarget &target : targets.targets) {
            if (!near(rho, target)) {
                continue;
            }
            DensityMatrix2Q later = rho;
            for (size_t j = 0; j < target.members.size(); j++) {
                later = protocol_step(later, u).state;
            }
            if (near(later, target)) {
                return {target.label, k, target.diagnostic};
            }
        }
        rho = protocol_step(rho, u).state;
    }
    return {BasinLabel::Unresolved, max_iters, Diagnostic::NoConvergence};
}

void check_classification_args(double lambda, int max_iters, double tol) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("classify_point: lambda must lie in [0, 1]");
    }
    if (max_iters < 1 || !(tol > 0.0)) {
        throw std::invalid_argument("classify_point: need max_iters >= 1 and tol > 0");
    }
}

}  // namespace

PointClassification classify_point(const RiemannPoint &zeta, double lambda, int max_iters, double tol,
                                   const AttractorTargets &targets) {
    check_classification_args(lambda, max_iters, tol);
    if (lambda == 1.0 && &targets == &default_targets(1.0)) {
        return classify_pure(zeta, max_iters, tol);
    }
    return classify_mixed(zeta, lambda, max_iters, tol, targets);
}

PointClassification classify_point(const RiemannPoint &zeta, double lambda, int max_iters, double tol) {
    check_classification_args(lambda, max_iters, tol);
    return classify_point(zeta, lambda, max_iters, tol, default_targets(lambda));
}

std::array<long long, 4> BasinGrid::counts() const {
    std::array<long long, 4> out{};
    for (BasinLabel l : labels) {
        out[static_cast<int>(l)]++;
    }
    return out;
}

namespace {

PointClassification classify_cell(const GridSpec &spec, const AttractorTargets &targets, int col, int row) {
    if (!spec.supersample) {
        return classify_point(spec.cell_center(col, row), spec.lambda, spec.max_iters, spec.tol, targets);
    }
    double dx = (spec.re_max - spec.re_min) / spec.width;
    double dy = (spec.im_max - spec.im_min) / spec.height;
    Complex center = spec.cell_center(col, row).value();
    std::array<PointClassification, 4> sub;
    int k = 0;
    for (double oy : {0.25, -0.25}) {
        for (double ox : {-0.25, 0.25}) {
            Complex z = center + Complex{ox * dx, oy * dy};
            sub[k++] = classify_point(RiemannPoint(z), spec.lambda, spec.max_iters, spec.tol, targets);
        }
    }
    std::array<int, 4> votes{};
    for (const auto &s : sub) {
        votes[static_cast<int>(s.label)]++;
    }
    // Majority; ties go to the lower label index.
    int winner = static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
    PointClassification best{static_cast<BasinLabel>(winner), spec.max_iters, Diagnostic::None};
    for (const auto &s : sub) {
        if (static_cast<int>(s.label) == winner && s.steps <= best.steps) {
            best = s;
        }
    }
    return best;
}

}  // namespace

BasinGrid compute_basin(const GridSpec &spec, const BasinOptions &options) {
    spec.validate();
    const AttractorTargets &targets = options.targets ? *options.targets : default_targets(spec.lambda);
    BasinGrid grid{spec, {}, {}};
    size_t cells = static_cast<size_t>(spec.width) * spec.height;
    grid.labels.assign(cells, BasinLabel::Unresolved);
    grid.steps.assign(cells, 0);
    std::atomic<int> rows_done{0};
    parallel_for(spec.height, options.threads, [&](int row) {
        for (int col = 0; col < spec.width; col++) {
            PointClassification c = classify_cell(spec, targets, col, row);
            size_t idx = static_cast<size_t>(row) * spec.width + col;
            grid.labels[idx] = c.label;
            grid.steps[idx] = c.steps;
        }
        int finished = rows_done.fetch_add(1) + 1;
        if (options.on_row_done) {
            options.on_row_done(finished);
        }
    });
    return grid;
}

std::vector<bool> boundary_cells(const BasinGrid &grid) {
    const int w = grid.spec.width;
    const int h = grid.spec.height;
    std::vector<bool> out(static_cast<size_t>(w) * h, false);
    for (int row = 0; row < h; row++) {
        for (int col = 0; col < w; col++) {
            BasinLabel here = grid.label(col, row);
            bool edge = (col > 0 && grid.label(col - 1, row) != here) ||
                        (col + 1 < w && grid.label(col + 1, row) != here) ||
                        (row > 0 && grid.label(col, row - 1) != here) ||
                        (row + 1 < h && grid.label(col, row + 1) != here);
            out[static_cast<size_t>(row) * w + col] = edge;
        }
    }
    return out;
}

namespace {

// Box-grid shifts per axis; the smallest count over all shifts is used.
constexpr int kBoxOffsets = 4;

}  // namespace

DimensionEstimate boundary_dimension(const BasinGrid &grid) {
    const int w = grid.spec.width;
    const int h = grid.spec.height;
    auto counts = grid.counts();
    if (std::count_if(counts.begin(), counts.end(), [](long long c) { return c > 0; }) < 2) {
        throw std::invalid_argument("boundary_dimension: grid has a single label");
    }
    std::vector<bool> edge = boundary_cells(grid);
    DimensionEstimate out{};
    int limit = std::max(1, std::min(w, h) / 4);
    // A 4-neighbour boundary is two cells thick, so boxes start at two cells
    // unless the grid is too small for that.
    int first = limit >= 4 ? 2 : 1;
    for (int size = first; size <= limit; size *= 2) {
        int shifts = std::min(size, kBoxOffsets);
        long long best = -1;
        for (int sy = 0; sy < shifts; sy++) {
            for (int sx = 0; sx < shifts; sx++) {
                int ox = sx * size / shifts;
                int oy = sy * size / shifts;
                int bw = (w + ox) / size + 1;
                int bh = (h + oy) / size + 1;
                std::vector<bool> hit(static_cast<size_t>(bw) * bh, false);
                long long count = 0;
                for (int row = 0; row < h; row++) {
                    for (int col = 0; col < w; col++) {
                        if (!edge[static_cast<size_t>(row) * w + col]) {
                            continue;
                        }
                        size_t box = static_cast<size_t>((row + oy) / size) * bw + (col + ox) / size;
                        if (!hit[box]) {
                            hit[box] = true;
                            count++;
                        }
                    }
                }
                if (best < 0 || count < best) {
                    best = count;
                }
            }
        }
        out.boxes.emplace_back(size, best);
    }
    if (out.boxes.size() < 2) {
        throw std::invalid_argument("boundary_dimension: grid too small for a box-counting fit");
    }
    // Least squares of log N against log(1/size).
    double n = static_cast<double>(out.boxes.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (auto [size, count] : out.boxes) {
        double x = -std::log(static_cast<double>(size));
        double y = std::log(static_cast<double>(count));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    double cov = sxy - sx * sy / n;
    double varx = sxx - sx * sx / n;
    double vary = syy - sy * sy / n;
    out.dimension = cov / varx;
    out.r2 = vary > 0 ? cov * cov / (varx * vary) : 1.0;
    return out;
}

SensitivityResult sensitivity_probe(const RiemannPoint &center, double radius, double lambda, int samples,
                                    std::uint64_t seed, int max_iters, double tol) {
    if (!(radius > 0.0) || samples < 2 || center.is_infinity()) {
        throw std::invalid_argument("sensitivity_probe: need finite center, radius > 0 and samples >= 2");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const AttractorTargets &targets = default_targets(lambda);
    std::vector<Complex> points;
    std::vector<BasinLabel> labels;
    SensitivityResult out{0, std::numeric_limits<double>::infinity(), {}};
    for (int s = 0; s < samples; s++) {
        double r = radius * std::sqrt(unit(rng));
        double theta = 2.0 * std::numbers::pi * unit(rng);
        Complex z = center.value() + std::polar(r, theta);
        PointClassification c = classify_point(RiemannPoint(z), lambda, max_iters, tol, targets);
        points.push_back(z);
        labels.push_back(c.label);
        out.counts[static_cast<int>(c.label)]++;
    }
    for (int l = 0; l < 3; l++) {
        out.distinct_labels += out.counts[l] > 0 ? 1 : 0;
    }
    for (size_t i = 0; i < points.size(); i++) {
        for (size_t j = i + 1; j < points.size(); j++) {
            if (labels[i] != labels[j] && labels[i] != BasinLabel::Unresolved && labels[j] != BasinLabel::Unresolved) {
                out.min_separation_with_distinct_labels =
                    std::min(out.min_separation_with_distinct_labels, std::abs(points[i] - points[j]));
            }
        }
    }
    return out;
}

}  // namespace purify
