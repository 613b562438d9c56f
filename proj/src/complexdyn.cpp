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

#include "purify/complexdyn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace purify {

RiemannPoint eval_f(const RiemannPoint &z) {
    if (z.is_infinity()) {
        return RiemannPoint(-1.0);
    }
    Complex x = z.value();
    if (std::abs(x) > kChartSwitchModulus) {
        Complex w = 1.0 / x;
        Complex w2 = w * w;
        return RiemannPoint((w2 - 1.0) / (w2 + 1.0));
    }
    Complex x2 = x * x;
    Complex den = 1.0 + x2;
    if (den == Complex{0.0, 0.0}) {
        return RiemannPoint::infinity();
    }
    return from_finite_or_infinity((1.0 - x2) / den);
}

RiemannPoint eval_g(const RiemannPoint &z) {
    if (z.is_infinity()) {
        return RiemannPoint(0.0);
    }
    Complex x = z.value();
    if (std::abs(x) > kChartSwitchModulus) {
        Complex w = 1.0 / x;
        Complex w2 = w * w;
        return RiemannPoint(2.0 * w2 / (w2 * w2 + 1.0));
    }
    Complex x2 = x * x;
    Complex den = 1.0 + x2 * x2;
    if (den == Complex{0.0, 0.0}) {
        return RiemannPoint::infinity();
    }
    return from_finite_or_infinity(2.0 * x2 / den);
}

Complex derivative_f(const RiemannPoint &z) {
    if (z.is_infinity()) {
        throw std::domain_error("derivative_f: infinity needs the reciprocal chart");
    }
    Complex x = z.value();
    Complex base = 1.0 + x * x;
    if (base == Complex{0.0, 0.0}) {
        throw std::domain_error("derivative_f: pole at " + z.str());
    }
    return -4.0 * x / (base * base);
}

std::vector<RiemannPoint> critical_points() {
    return {RiemannPoint(0.0), RiemannPoint::infinity()};
}

std::vector<RiemannPoint> orbit_f(const RiemannPoint &z, int length) {
    std::vector<RiemannPoint> out;
    out.reserve(std::max(length, 0));
    RiemannPoint cur = z;
    for (int k = 0; k < length; k++) {
        out.push_back(cur);
        cur = eval_f(cur);
    }
    return out;
}

std::string to_string(CycleKind kind) {
    switch (kind) {
        case CycleKind::Superattracting:
            return "superattracting";
        case CycleKind::Attracting:
            return "attracting";
        case CycleKind::Indifferent:
            return "indifferent";
        case CycleKind::Repelling:
            return "repelling";
    }
    return "unknown";
}

CycleKind classify_multiplier(Complex multiplier) {
    double m = std::abs(multiplier);
    if (m <= kSuperattractingTolerance) {
        return CycleKind::Superattracting;
    }
    if (std::abs(m - 1.0) <= kIndifferentTolerance) {
        return CycleKind::Indifferent;
    }
    return m < 1.0 ? CycleKind::Attracting : CycleKind::Repelling;
}

Complex cycle_multiplier(const std::vector<RiemannPoint> &points) {
    Complex m = 1.0;
    for (const auto &p : points) {
        m *= derivative_f(p);
    }
    return m;
}

namespace {

CycleReport make_report(std::vector<RiemannPoint> points) {
    Complex m = cycle_multiplier(points);
    int period = static_cast<int>(points.size());
    return {period, std::move(points), m, classify_multiplier(m)};
}

// Finite-arithmetic f for Newton iterations; the search region never needs
// the chart at infinity because f(infinity) = -1 is not periodic.
inline Complex f_raw(Complex z) {
    Complex z2 = z * z;
    return (1.0 - z2) / (1.0 + z2);
}

inline Complex df_raw(Complex z) {
    Complex base = 1.0 + z * z;
    return -4.0 * z / (base * base);
}

// f^p(z) - z and its derivative. Returns false if the orbit blows up.
bool periodic_residual(Complex z, int period, Complex &value, Complex &slope) {
    Complex cur = z;
    Complex deriv = 1.0;
    for (int k = 0; k < period; k++) {
        deriv *= df_raw(cur);
        cur = f_raw(cur);
        if (!std::isfinite(cur.real()) || !std::isfinite(cur.imag()) || std::abs(cur) > 1e12) {
            return false;
        }
    }
    value = cur - z;
    slope = deriv - 1.0;
    return std::isfinite(slope.real()) && std::isfinite(slope.imag());
}

bool newton_polish(Complex &z, int period, int iterations) {
    for (int it = 0; it < iterations; it++) {
        Complex value, slope;
        if (!periodic_residual(z, period, value, slope) || std::abs(slope) == 0.0) {
            return false;
        }
        Complex delta = value / slope;
        z -= delta;
        if (std::abs(delta) <= 1e-15 * std::max(1.0, std::abs(z))) {
            Complex check, unused;
            return periodic_residual(z, period, check, unused) &&
                   std::abs(check) <= 1e-10 * std::max(1.0, std::abs(z));
        }
    }
    return false;
}

// Halton radical inverse.
double radical_inverse(int index, int base) {
    double result = 0.0;
    double fraction = 1.0 / base;
    while (index > 0) {
        result += fraction * (index % base);
        index /= base;
        fraction /= base;
    }
    return result;
}

int minimal_period(Complex z, int period, double tol) {
    Complex cur = z;
    for (int k = 1; k <= period; k++) {
        cur = f_raw(cur);
        if (std::abs(cur - z) <= tol * std::max(1.0, std::abs(z))) {
            return k;
        }
    }
    return period;
}

}  // namespace

std::vector<CycleReport> fixed_points_f() {
    Constants c = compute_constants();
    // Remaining quadratic factor: z^2 + (1 + r) z + (1 + r + r^2) = 0.
    double r = c.zeta_A;
    Complex b = 1.0 + r;
    Complex disc = std::sqrt(Complex(b * b - 4.0 * (1.0 + r + r * r)));
    Complex lower = (-b - disc) / 2.0;
    Complex upper = (-b + disc) / 2.0;
    if (lower.imag() > upper.imag()) {
        std::swap(lower, upper);
    }
    std::vector<CycleReport> out;
    for (Complex root : {Complex(r, 0.0), lower, upper}) {
        Complex polished = root;
        newton_polish(polished, 1, 20);
        out.push_back(make_report({RiemannPoint(polished)}));
    }
    return out;
}

bool CycleSearchResult::complete() const {
    return found_points == expected_points;
}

CycleSearchResult cycles_of_f(int max_period, const CycleSearchOptions &options) {
    if (max_period < 1 || max_period > 6) {
        throw std::invalid_argument("cycles_of_f: max_period must be in [1, 6]");
    }
    CycleSearchResult result;
    std::vector<Complex> claimed;  // points of cycles already reported
    for (int period = 1; period <= max_period; period++) {
        std::vector<Complex> roots;
        auto is_known = [&](Complex z, const std::vector<Complex> &pool) {
            return std::any_of(pool.begin(), pool.end(), [&](Complex q) {
                return std::abs(q - z) <= options.dedup_tolerance * std::max(1.0, std::abs(z));
            });
        };
        for (int s = 0; s < options.starts; s++) {
            // Quasi-random start, uniform in the disk of radius start_radius.
            double rad = options.start_radius * std::sqrt(radical_inverse(s + 1, 2));
            double ang = 2.0 * std::numbers::pi * radical_inverse(s + 1, 3);
            Complex z = std::polar(rad, ang);
            if (!newton_polish(z, period, options.newton_iterations)) {
                continue;
            }
            if (!is_known(z, roots)) {
                roots.push_back(z);
            }
        }
        result.found_points.push_back(static_cast<int>(roots.size()));
        result.expected_points.push_back((1 << period) + 1);

        std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        for (Complex z : roots) {
            if (minimal_period(z, period, 1e-8) != period || is_known(z, claimed)) {
                continue;
            }
            std::vector<RiemannPoint> points;
            Complex cur = z;
            for (int k = 0; k < period; k++) {
                points.emplace_back(cur);
                claimed.push_back(cur);
                cur = f_raw(cur);
            }
            result.cycles.push_back(make_report(std::move(points)));
        }
    }
    return result;
}

Constants compute_constants() {
    Constants c{};
    c.a = std::cbrt(17.0 + 3.0 * std::sqrt(33.0));
    c.zeta_A = (c.a - 1.0 - 2.0 / c.a) / 3.0;
    c.zeta_B = std::sqrt((-2.0 + 2.0 * c.a + c.a * c.a) / (2.0 + 4.0 * c.a - c.a * c.a));

    constexpr int kAngles = 4096;
    auto contracts = [](double r) {
        double worst = 0.0;
        for (int k = 0; k < kAngles; k++) {
            RiemannPoint image = eval_g(RiemannPoint(std::polar(r, 2.0 * std::numbers::pi * k / kAngles)));
            if (image.is_infinity()) {
                return false;
            }
            worst = std::max(worst, std::abs(image.value()));
        }
        return worst < r;
    };
    double lo = 1e-3;
    double hi = 1.0;
    while (hi - lo > 1e-15) {
        double mid = 0.5 * (lo + hi);
        (contracts(mid) ? lo : hi) = mid;
    }
    c.zeta_C = lo;
    return c;
}

std::string to_string(ParityLabel label) {
    switch (label) {
        case ParityLabel::EvenZero:
            return "even-zero";
        case ParityLabel::OddZero:
            return "odd-zero";
        case ParityLabel::Unresolved:
            return "unresolved";
    }
    return "unknown";
}

ParityResult iterate_reduced(const RiemannPoint &z0, int max_iters, double tol) {
    if (max_iters < 1 || !(tol > 0.0)) {
        throw std::invalid_argument("iterate_reduced: need max_iters >= 1 and tol > 0");
    }
    RiemannPoint z = z0;
    for (int k = 0; k <= max_iters; k++) {
        if (z.is_finite() && std::abs(z.value()) < tol) {
            return {k % 2 == 0 ? ParityLabel::EvenZero : ParityLabel::OddZero, k};
        }
        z = eval_f(z);
    }
    return {ParityLabel::Unresolved, max_iters};
}

}  // namespace purify
