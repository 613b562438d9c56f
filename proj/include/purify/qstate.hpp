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

// Two-qubit states. The computational basis order is |00>, |01>, |10>, |11>
// (index = 2*a + b for qubits a, b) in every vector and matrix of the library.

#include <Eigen/Dense>

#include "purify/riemann.hpp"

namespace purify {

using Amplitudes = Eigen::Vector4cd;
using Matrix4 = Eigen::Matrix4cd;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-10;

/// Normalized pure state c1|00> + c2|01> + c3|10> + c4|11>.
class PureState2Q {
   public:
    /// Rescales to unit norm. Throws std::invalid_argument on a zero or
    /// non-finite vector.
    static PureState2Q normalized(const Amplitudes &amplitudes);
    /// Requires unit norm within kNormTolerance.
    static PureState2Q checked(const Amplitudes &amplitudes);

    const Amplitudes &amplitudes() const {
        return amplitudes_;
    }
    Complex operator[](Eigen::Index i) const {
        return amplitudes_[i];
    }

   private:
    explicit PureState2Q(const Amplitudes &amplitudes) : amplitudes_(amplitudes) {
    }
    Amplitudes amplitudes_;
};

/// 4x4 density matrix. `checked` enforces Hermiticity, unit trace and
/// positivity; `unchecked` wraps arbitrary Hermitian data (e.g. a perturbed
/// Fano vector) and leaves validation to the caller.
class DensityMatrix2Q {
   public:
    static DensityMatrix2Q checked(const Matrix4 &matrix);
    static DensityMatrix2Q unchecked(const Matrix4 &matrix) {
        return DensityMatrix2Q(matrix);
    }

    const Matrix4 &matrix() const {
        return matrix_;
    }
    Complex operator()(Eigen::Index row, Eigen::Index col) const {
        return matrix_(row, col);
    }

    Eigen::Vector4d eigenvalues() const;
    bool is_physical() const;
    /// Throws std::invalid_argument describing the first violated invariant.
    void validate() const;

   private:
    explicit DensityMatrix2Q(const Matrix4 &matrix) : matrix_(matrix) {
    }
    Matrix4 matrix_;
};

/// N(zeta) (|00> + zeta |11>) with N = (1 + |zeta|^2)^(-1/2); |11> at infinity.
PureState2Q state_from_zeta(const RiemannPoint &zeta);

DensityMatrix2Q density_from_state(const PureState2Q &psi);

/// lambda |Psi(zeta)><Psi(zeta)| + (1 - lambda)/4 * 1, lambda in [0, 1].
DensityMatrix2Q werner_mix(const RiemannPoint &zeta, double lambda);

DensityMatrix2Q maximally_mixed();

PureState2Q basis_state(int index);
PureState2Q bell_phi_plus();
/// |++> = (|00> + |01> + |10> + |11>) / 2.
PureState2Q plus_plus();

/// Binary entropy in bits, with 0 log 0 = 0.
double binary_entropy(double p);

/// Von Neumann entropy (bits) of the reduced state of the first qubit.
double entanglement_entropy(const PureState2Q &psi);

/// Same quantity for a mixed state: entropy of its one-qubit marginal. This
/// is an entanglement measure only for pure input.
double reduced_entropy(const DensityMatrix2Q &rho);

double purity(const DensityMatrix2Q &rho);

double trace_distance(const DensityMatrix2Q &a, const DensityMatrix2Q &b);
/// Trace distance between the projectors |a><a| and |b><b|.
double trace_distance(const PureState2Q &a, const PureState2Q &b);

/// Equivalent to trace_distance(a, b) < tol, but skips the eigensolver when
/// the Frobenius norm already decides (||D||_F / 2 <= T(D) <= ||D||_F).
bool trace_distance_below(const DensityMatrix2Q &a, const DensityMatrix2Q &b, double tol);

}  // namespace purify
