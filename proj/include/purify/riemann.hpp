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

#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace purify {

using Complex = std::complex<double>;

/// A point of the extended complex plane. Infinity is a distinguished value
/// and is never represented by a large finite number.
class RiemannPoint {
   public:
    constexpr RiemannPoint() : value_(Complex{0.0, 0.0}) {
    }
    constexpr RiemannPoint(Complex z) : value_(z) {
    }
    constexpr RiemannPoint(double x) : value_(Complex{x, 0.0}) {
    }

    static constexpr RiemannPoint infinity() {
        RiemannPoint p;
        p.value_.reset();
        return p;
    }

    constexpr bool is_infinity() const {
        return !value_.has_value();
    }
    constexpr bool is_finite() const {
        return value_.has_value();
    }

    /// The finite value. Throws std::domain_error at infinity.
    Complex value() const;

    /// Inverse stereographic chart: 1/z, with 0 <-> infinity.
    RiemannPoint reciprocal() const;
    RiemannPoint conj() const;
    RiemannPoint operator-() const;

    bool operator==(const RiemannPoint &other) const = default;

    std::string str() const;

   private:
    std::optional<Complex> value_;
};

/// Finite results whose magnitude overflowed are folded into infinity.
RiemannPoint from_finite_or_infinity(Complex z);

/// Chordal distance on the Riemann sphere, in [0, 2].
double chordal_distance(const RiemannPoint &a, const RiemannPoint &b);

/// Parses `a+bi`, `a-bi`, `bi`, `a`, `i`, `-i` and `inf`. Throws
/// std::invalid_argument on malformed input.
RiemannPoint parse_riemann_point(std::string_view text);

}  // namespace purify
