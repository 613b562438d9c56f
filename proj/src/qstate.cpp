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

#include "purify/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace purify {

PureState2Q PureState2Q::normalized(const Amplitudes &amplitudes) {
    double norm = amplitudes.norm();
    if (!std::isfinite(norm) || norm == 0.0) {
        throw std::invalid_argument("PureState2Q: amplitudes must be finite and non-zero");
    }
    return PureState2Q(amplitudes / norm);
}

PureState2Q PureState2Q::checked(const Amplitudes &amplitudes) {
    double norm2 = amplitudes.squaredNorm();
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kNormTolerance) {
        throw std::invalid_argument("PureState2Q: state is not normalized (|psi|^2 = " + std::to_string(norm2) + ")");
    }
    return PureState2Q(amplitudes);
}

DensityMatrix2Q DensityMatrix2Q::checked(const Matrix4 &matrix) {
    DensityMatrix2Q rho(matrix);
    rho.validate();
    return rho;
}

Eigen::Vector4d DensityMatrix2Q::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Matrix4> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

bool DensityMatrix2Q::is_physical() const {
    try {
        validate();
    } catch (const std::invalid_argument &) {
        return false;
    }
    return true;
}

void DensityMatrix2Q::validate() const {
    if (!matrix_.allFinite()) {
        throw std::invalid_argument("DensityMatrix2Q: non-finite entry");
    }
    double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermitianTolerance) {
        throw std::invalid_argument("DensityMatrix2Q: not Hermitian (residual " + std::to_string(asym) + ")");
    }
    Complex tr = matrix_.trace();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        throw std::invalid_argument("DensityMatrix2Q: trace is not 1 (" + std::to_string(tr.real()) + ")");
    }
    double min_eig = eigenvalues().minCoeff();
    if (min_eig < -kPositivityTolerance) {
        throw std::invalid_argument("DensityMatrix2Q: negative eigenvalue " + std::to_string(min_eig));
    }
}

PureState2Q state_from_zeta(const RiemannPoint &zeta) {
    if (zeta.is_infinity()) {
        return basis_state(3);
    }
    Complex z = zeta.value();
    // hypot keeps |zeta| up to ~1e308 away from overflow.
    double scale = std::hypot(1.0, std::abs(z));
    Amplitudes amps;
    amps << 1.0 / scale, 0.0, 0.0, z / scale;
    return PureState2Q::normalized(amps);
}

DensityMatrix2Q density_from_state(const PureState2Q &psi) {
    const Amplitudes &c = psi.amplitudes();
    return DensityMatrix2Q::unchecked(c * c.adjoint());
}

DensityMatrix2Q werner_mix(const RiemannPoint &zeta, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("werner_mix: lambda must lie in [0, 1]");
    }
    Matrix4 rho = lambda * density_from_state(state_from_zeta(zeta)).matrix();
    rho.diagonal().array() += (1.0 - lambda) / 4.0;
    return DensityMatrix2Q::unchecked(rho);
}

DensityMatrix2Q maximally_mixed() {
    return DensityMatrix2Q::unchecked(Matrix4::Identity() / 4.0);
}

PureState2Q basis_state(int index) {
    if (index < 0 || index > 3) {
        throw std::invalid_argument("basis_state: index must be 0..3");
    }
    Amplitudes amps = Amplitudes::Zero();
    amps[index] = 1.0;
    return PureState2Q::checked(amps);
}

PureState2Q bell_phi_plus() {
    Amplitudes amps;
    amps << 1.0, 0.0, 0.0, 1.0;
    return PureState2Q::normalized(amps);
}

PureState2Q plus_plus() {
    return PureState2Q::checked(Amplitudes::Constant(0.5));
}

double binary_entropy(double p) {
    auto term = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
    return term(p) + term(1.0 - p);
}

double entanglement_entropy(const PureState2Q &psi) {
    // Reduced state eigenvalues are (1 +- sqrt(1 - 4|det C|^2)) / 2 for the
    // coefficient matrix C = [[c1, c2], [c3, c4]]; take the smaller one in a
    // cancellation-free form.
    Complex det = psi[0] * psi[3] - psi[1] * psi[2];
    double d2 = std::norm(det);
    double root = std::sqrt(std::max(0.0, 1.0 - 4.0 * d2));
    double small = 2.0 * d2 / (1.0 + root);
    return binary_entropy(std::min(small, 0.5));
}

double reduced_entropy(const DensityMatrix2Q &rho) {
    const Matrix4 &m = rho.matrix();
    Eigen::Matrix2cd reduced;
    reduced(0, 0) = m(0, 0) + m(1, 1);
    reduced(0, 1) = m(0, 2) + m(1, 3);
    reduced(1, 0) = m(2, 0) + m(3, 1);
    reduced(1, 1) = m(2, 2) + m(3, 3);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(reduced, Eigen::EigenvaluesOnly);
    double total = 0.0;
    for (double x : solver.eigenvalues()) {
        if (x > 0.0) {
            total -= x * std::log2(x);
        }
    }
    return total;
}

double purity(const DensityMatrix2Q &rho) {
    // Tr(rho^2) = sum |rho_ik|^2 for Hermitian rho.
    return rho.matrix().squaredNorm();
}

double trace_distance(const DensityMatrix2Q &a, const DensityMatrix2Q &b) {
    Matrix4 diff = a.matrix() - b.matrix();
    Eigen::SelfAdjointEigenSolver<Matrix4> solver(diff, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const PureState2Q &a, const PureState2Q &b) {
    // sqrt(1 - |<a|b>|^2), evaluated through the phase-aligned difference so
    // that nearly equal states do not lose precision to cancellation.
    Complex overlap = b.amplitudes().dot(a.amplitudes());
    double magnitude = std::abs(overlap);
    if (magnitude == 0.0) {
        return 1.0;
    }
    Amplitudes aligned = a.amplitudes() - (overlap / magnitude) * b.amplitudes();
    double gap = 0.5 * aligned.squaredNorm();
    return std::sqrt(std::clamp(gap * (2.0 - gap), 0.0, 1.0));
}

bool trace_distance_below(const DensityMatrix2Q &a, const DensityMatrix2Q &b, double tol) {
    double frob = (a.matrix() - b.matrix()).norm();
    if (0.5 * frob >= tol) {
        return false;
    }
    if (frob < tol) {
        return true;
    }
    return trace_distance(a, b) < tol;
}

}  // namespace purify
