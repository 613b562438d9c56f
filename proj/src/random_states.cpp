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

#include "purify/random_states.hpp"

#include <cmath>

namespace purify {

namespace {

Complex gaussian(std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    double re = normal(rng);
    double im = normal(rng);
    return {re, im};
}

}  // namespace

PureState2Q random_pure_state(std::mt19937_64 &rng) {
    Amplitudes amps;
    for (int i = 0; i < 4; i++) {
        amps[i] = gaussian(rng);
    }
    return PureState2Q::normalized(amps);
}

DensityMatrix2Q random_mixed_state(std::mt19937_64 &rng) {
    Matrix4 g;
    for (int i = 0; i < 4; i++) {
        for (int k = 0; k < 4; k++) {
            g(i, k) = gaussian(rng);
        }
    }
    Matrix4 rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix2Q::unchecked(rho);
}

DensityMatrix2Q random_near_diagonal_state(std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> exponent(8, 300);
    double eps = std::pow(10.0, -exponent(rng));
    Matrix4 rho = eps * random_mixed_state(rng).matrix();
    rho(0, 0) += 1.0 - eps;
    return DensityMatrix2Q::unchecked(rho);
}

}  // namespace purify
