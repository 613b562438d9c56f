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

#include "purify/fano.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "purify/parallel.hpp"

namespace purify {

namespace {

std::array<Matrix4, 16> build_pauli_products() {
    const Complex i{0.0, 1.0};
    std::array<Eigen::Matrix2cd, 4> sigma;
    sigma[0] << 1, 0, 0, 1;
    sigma[1] << 0, 1, 1, 0;
    sigma[2] << 0, -i, i, 0;
    sigma[3] << 1, 0, 0, -1;
    std::array<Matrix4, 16> out;
    for (int mu = 0; mu < 4; mu++) {
        for (int nu = 0; nu < 4; nu++) {
            Matrix4 &m = out[4 * mu + nu];
            for (int a = 0; a < 2; a++) {
                for (int b = 0; b < 2; b++) {
                    for (int c = 0; c < 2; c++) {
                        for (int d = 0; d < 2; d++) {
                            m(2 * a + b, 2 * c + d) = sigma[mu](a, c) * sigma[nu](b, d);
                        }
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace

const Matrix4 &pauli_product(int index) {
    static const std::array<Matrix4, 16> table = build_pauli_products();
    return table.at(index);
}

FanoVector to_fano(const DensityMatrix2Q &rho) {
    FanoVector v;
    for (int k = 0; k < 16; k++) {
        // Tr(rho P) = sum_ij rho_ij P_ji
        v.r[k] = (rho.matrix().cwiseProduct(pauli_product(k).transpose())).sum().real();
    }
    return v;
}

DensityMatrix2Q from_fano(const FanoVector &v) {
    if (std::abs(v.r[0] - 1.0) > 1e-9) {
        throw std::invalid_argument("from_fano: r_00 must equal 1");
    }
    Matrix4 m = Matrix4::Zero();
    for (int k = 0; k < 16; k++) {
        m += v.r[k] * pauli_product(k);
    }
    return DensityMatrix2Q::unchecked(m / 4.0);
}

FanoVector step_fano(const FanoVector &v, const LocalUnitary &u) {
    return to_fano(protocol_step(from_fano(v), u).state);
}

Jacobian15 jacobian_cycle(const std::vector<FanoVector> &points, double h, const LocalUnitary &u) {
    if (points.empty()) {
        throw std::invalid_argument("jacobian_cycle: empty cycle");
    }
    if (!(h >= 1e-8 && h <= 1e-4)) {
        throw std::invalid_argument("jacobian_cycle: h must lie in [1e-8, 1e-4]");
    }
    size_t period = points.size();
    for (size_t k = 0; k < period; k++) {
        double gap = trace_distance(from_fano(step_fano(points[k], u)), from_fano(points[(k + 1) % period]));
        if (!(gap < 1e-9)) {
            throw std::invalid_argument("jacobian_cycle: points do not form a cycle (gap " + std::to_string(gap) + ")");
        }
    }
    Jacobian15 total = Jacobian15::Identity();
    for (const FanoVector &x : points) {
        Jacobian15 local;
        for (int j = 0; j < 15; j++) {
            FanoVector plus = x;
            FanoVector minus = x;
            plus.r[j + 1] += h;
            minus.r[j + 1] -= h;
            FanoVector fp = step_fano(plus, u);
            FanoVector fm = step_fano(minus, u);
            for (int i = 0; i < 15; i++) {
                double d = (fp.r[i + 1] - fm.r[i + 1]) / (2.0 * h);
                if (!std::isfinite(d)) {
                    throw std::runtime_error("jacobian_cycle: non-finite difference quotient");
                }
                local(i, j) = d;
            }
        }
        total = (local * total).eval();
    }
    return total;
}

std::vector<double> eigenvalue_magnitudes(const Jacobian15 &jacobian) {
    Eigen::EigenSolver<Jacobian15> solver(jacobian, false);
    std::vector<double> out;
    for (const auto &ev : solver.eigenvalues()) {
        out.push_back(std::abs(ev));
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

std::string to_string(AttractorKind kind) {
    switch (kind) {
        case AttractorKind::Bell:
            return "bell";
        case AttractorKind::SeparableCycle:
            return "separable";
        case AttractorKind::MixedCycle:
            return "mixed";
        case AttractorKind::MaximallyMixed:
            return "maximally_mixed";
        case AttractorKind::Other:
            return "other";
    }
    return "unknown";
}

AttractorKind classify_attractor(const std::vector<DensityMatrix2Q> &cycle) {
    bool all_pure = std::all_of(cycle.begin(), cycle.end(), [](const auto &x) { return purity(x) > 1.0 - 1e-9; });
    if (all_pure) {
        bool maximal = std::all_of(cycle.begin(), cycle.end(), [](const auto &x) { return reduced_entropy(x) > 1.0 - 1e-6; });
        bool product = std::all_of(cycle.begin(), cycle.end(), [](const auto &x) { return reduced_entropy(x) < 1e-6; });
        if (maximal && cycle.size() == 1) {
            return AttractorKind::Bell;
        }
        if (product) {
            return AttractorKind::SeparableCycle;
        }
        return AttractorKind::Other;
    }
    DensityMatrix2Q flat = maximally_mixed();
    bool flat_member = std::any_of(cycle.begin(), cycle.end(), [&](const auto &x) { return trace_distance(x, flat) < 1e-6; });
    return flat_member ? AttractorKind::MaximallyMixed : AttractorKind::MixedCycle;
}

namespace {

double halton(int index, int base) {
    double result = 0.0;
    double fraction = 1.0 / base;
    while (index > 0) {
        result += fraction * (index % base);
        index /= base;
        fraction /= base;
    }
    return result;
}

struct Seed {
    double lambda;
    RiemannPoint zeta;
};

// Lexicographic key on rounded Fano coordinates; picks a phase-independent
// starting member for each cycle.
std::array<long long, 16> member_key(const DensityMatrix2Q &rho) {
    FanoVector v = to_fano(rho);
    std::array<long long, 16> key{};
    for (int k = 0; k < 16; k++) {
        key[k] = std::llround(v.r[k] * 1e6);
    }
    return key;
}

std::optional<StabilityReport> run_seed(const Seed &seed, int index, const MixedCycleSearchOptions &options) {
    const int max_period = options.max_period;
    std::vector<DensityMatrix2Q> history;  // ring of the last max_period + 1 states
    history.reserve(max_period + 1);
    std::vector<int> streak(max_period + 1, 0);
    DensityMatrix2Q state = werner_mix(seed.zeta, seed.lambda);
    history.push_back(state);
    int period = 0;
    for (int t = 1; t <= options.max_steps && period == 0; t++) {
        state = protocol_step(state, options.unitary).state;
        if (history.size() == static_cast<size_t>(max_period + 1)) {
            history.erase(history.begin());
        }
        history.push_back(state);
        for (int lag = 1; lag <= max_period; lag++) {
            if (static_cast<int>(history.size()) <= lag) {
                break;
            }
            const auto &earlier = history[history.size() - 1 - lag];
            streak[lag] = trace_distance_below(state, earlier, options.tol) ? streak[lag] + 1 : 0;
        }
        for (int lag = 1; lag <= max_period; lag++) {
            if (streak[lag] >= options.sustain) {
                period = lag;
                break;
            }
        }
    }
    if (period == 0) {
        return std::nullopt;
    }

    // Polish by further iteration; keep the best-closing phase point.
    auto advance = [&](DensityMatrix2Q x, int n) {
        for (int k = 0; k < n; k++) {
            x = protocol_step(x, options.unitary).state;
        }
        return x;
    };
    DensityMatrix2Q best = state;
    double best_closure = trace_distance(advance(state, period), state);
    DensityMatrix2Q cur = state;
    for (int round = 0; round < 50 && best_closure > 1e-14; round++) {
        cur = advance(cur, period);
        double closure = trace_distance(advance(cur, period), cur);
        if (closure < best_closure) {
            best_closure = closure;
            best = cur;
        }
    }

    std::vector<DensityMatrix2Q> cycle;
    DensityMatrix2Q x = best;
    for (int k = 0; k < period; k++) {
        cycle.push_back(x);
        x = protocol_step(x, options.unitary).state;
    }
    auto start = std::min_element(cycle.begin(), cycle.end(), [](const auto &a, const auto &b) {
        return member_key(a) < member_key(b);
    });
    std::rotate(cycle.begin(), start, cycle.end());

    std::vector<FanoVector> fano;
    for (const auto &m : cycle) {
        fano.push_back(to_fano(m));
    }
    std::vector<double> magnitudes;
    try {
        magnitudes = eigenvalue_magnitudes(jacobian_cycle(fano, options.jacobian_h, options.unitary));
    } catch (const std::exception &) {
        // Periodicity was detected but the orbit does not close tightly
        // enough to linearize around; treat the seed as unresolved.
        return std::nullopt;
    }
    bool stable = std::all_of(magnitudes.begin(), magnitudes.end(), [](double m) { return m < 1.0 - kStabilityMargin; });
    double closure = trace_distance(advance(cycle.front(), period), cycle.front());
    AttractorKind kind = classify_attractor(cycle);
    return StabilityReport{std::move(cycle), period, std::move(magnitudes), stable, closure, kind, index, 1};
}

bool same_cycle(const StabilityReport &a, const StabilityReport &b, double tol) {
    if (a.period != b.period) {
        return false;
    }
    for (const auto &x : a.cycle) {
        for (const auto &y : b.cycle) {
            if (trace_distance_below(x, y, tol)) {
                return true;
            }
        }
    }
    return false;
}

}  // namespace

MixedCycleSearchResult find_mixed_cycles(const MixedCycleSearchOptions &options) {
    if (options.seeds_per_lambda < 1 || options.seed_offset < 0 || options.max_period < 1 || !(options.tol > 0.0) || options.max_steps < 1 ||
        options.sustain < 1) {
        throw std::invalid_argument("find_mixed_cycles: parameters must be positive");
    }
    std::vector<double> lambdas = options.lambdas;
    if (options.include_unstable && std::find(lambdas.begin(), lambdas.end(), 0.0) == lambdas.end()) {
        lambdas.insert(lambdas.begin(), 0.0);
    }
    std::vector<Seed> seeds;
    for (double lambda : lambdas) {
        if (!(lambda >= 0.0 && lambda <= 1.0)) {
            throw std::invalid_argument("find_mixed_cycles: lambda outside [0, 1]");
        }
        for (int s = 0; s < options.seeds_per_lambda; s++) {
            int h = s + 1 + options.seed_offset;
            Complex zeta{4.0 * halton(h, 2) - 2.0, 4.0 * halton(h, 3) - 2.0};
            seeds.push_back({lambda, RiemannPoint(zeta)});
        }
    }

    std::vector<std::optional<StabilityReport>> outcomes(seeds.size());
    parallel_for(static_cast<int>(seeds.size()), options.threads,
                 [&](int i) { outcomes[i] = run_seed(seeds[i], i, options); });

    MixedCycleSearchResult result;
    result.seeds = static_cast<int>(seeds.size());
    for (size_t i = 0; i < seeds.size(); i++) {
        if (!outcomes[i]) {
            result.unresolved.push_back({static_cast<int>(i), seeds[i].lambda, seeds[i].zeta});
            continue;
        }
        auto match = std::find_if(result.cycles.begin(), result.cycles.end(), [&](const StabilityReport &known) {
            return same_cycle(known, *outcomes[i], options.dedup_tolerance);
        });
        if (match != result.cycles.end()) {
            match->seed_hits++;
        } else {
            result.cycles.push_back(std::move(*outcomes[i]));
        }
    }
    if (!options.include_unstable) {
        std::erase_if(result.cycles, [](const StabilityReport &r) { return !r.stable; });
    }
    return result;
}

DensityMatrix2Q separable_mixed_rho1() {
    Matrix4 m = Matrix4::Zero();
    m(0, 0) = 0.5;
    m(3, 3) = 0.5;
    return DensityMatrix2Q::unchecked(m);
}

DensityMatrix2Q incoherent_rho2() {
    Matrix4 m = Matrix4::Zero();
    m(0, 0) = 0.25;
    m(3, 3) = 0.25;
    m(1, 1) = 0.25;
    m(1, 2) = 0.25;
    m(2, 1) = 0.25;
    m(2, 2) = 0.25;
    return DensityMatrix2Q::unchecked(m);
}

PartnerDiagnostics partner_diagnostics(const StabilityReport &cycle) {
    if (cycle.period != 2 || cycle.cycle.size() != 2) {
        throw std::invalid_argument("partner_diagnostics: needs a period-2 cycle");
    }
    DensityMatrix2Q rho1 = separable_mixed_rho1();
    double d0 = trace_distance(cycle.cycle[0], rho1);
    double d1 = trace_distance(cycle.cycle[1], rho1);
    const DensityMatrix2Q &partner = d0 <= d1 ? cycle.cycle[1] : cycle.cycle[0];
    DensityMatrix2Q reference = incoherent_rho2();
    Matrix4 diff = partner.matrix() - reference.matrix();
    double diagonal = diff.diagonal().cwiseAbs().maxCoeff();
    double cross = diff.block<2, 2>(1, 1).cwiseAbs().maxCoeff();
    return {partner, std::min(d0, d1), trace_distance(partner, reference), diagonal, cross, partner(0, 3)};
}

}  // namespace purify
