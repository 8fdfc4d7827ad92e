// Copyright 2026 The Polmix Authors
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

#include "polmix/linalg.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polmix {

std::string PhysicalityReport::describe() const {
    std::ostringstream out;
    if (!finite) {
        out << "non-finite entries";
        return out.str();
    }
    out << "hermiticity violation " << hermiticity << ", trace violation " << trace
        << ", PSD violation " << psd;
    return out.str();
}

PhysicalityReport check_physical(const Mat4 &m, double tolerance) {
    PhysicalityReport r;
    if (!m.allFinite()) {
        r.finite = false;
        return r;
    }
    r.hermiticity = (m - m.adjoint()).cwiseAbs().maxCoeff();
    r.trace = std::abs(m.trace() - 1.0);
    Eigen::SelfAdjointEigenSolver<Mat4> solver(hermitize(m), Eigen::EigenvaluesOnly);
    r.psd = std::max(0.0, -solver.eigenvalues().minCoeff());
    r.ok = r.hermiticity <= tolerance && r.trace <= tolerance && r.psd <= tolerance;
    return r;
}

PureState PureState::from_amplitudes(const Vec4 &amplitudes, double tolerance) {
    if (!amplitudes.allFinite()) {
        throw InvalidInput("pure state has non-finite amplitudes");
    }
    double norm2 = amplitudes.squaredNorm();
    if (std::abs(norm2 - 1.0) > tolerance) {
        std::ostringstream msg;
        msg << "pure state not normalized: sum |a|^2 = " << norm2;
        throw InvalidInput(msg.str());
    }
    return PureState(amplitudes);
}

PureState PureState::normalized(const Vec4 &amplitudes) {
    double n = amplitudes.norm();
    if (!(n > 0) || !std::isfinite(n)) {
        throw InvalidInput("cannot normalize a zero or non-finite vector");
    }
    return PureState(amplitudes / n);
}

DensityMatrix DensityMatrix::from_matrix(const Mat4 &m, double tolerance) {
    PhysicalityReport r = check_physical(m, tolerance);
    if (!r.ok) {
        throw InvalidInput("density matrix is not physical: " + r.describe());
    }
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::from_pure(const PureState &psi) {
    return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed() {
    return DensityMatrix(Mat4::Identity() * 0.25);
}

LocalUnitary LocalUnitary::from_matrix(const Mat2 &m, double tolerance) {
    if (!m.allFinite()) {
        throw InvalidInput("local unitary has non-finite entries");
    }
    double defect = (m.adjoint() * m - Mat2::Identity()).cwiseAbs().maxCoeff();
    if (defect > tolerance) {
        std::ostringstream msg;
        msg << "matrix is not unitary: max |U^dagger U - I| = " << defect;
        throw InvalidInput(msg.str());
    }
    return LocalUnitary(m);
}

HermitianEigen eig_hermitian(const Mat4 &m) {
    double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (!(defect <= tol::kPhysical)) {
        std::ostringstream msg;
        msg << "eig_hermitian: input not Hermitian (defect " << defect << ")";
        throw InvalidInput(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Mat4> solver(hermitize(m));
    HermitianEigen out;
    // Eigen sorts ascending; reverse into descending order.
    for (int k = 0; k < 4; k++) {
        out.values[k] = solver.eigenvalues()[3 - k];
        Vec4 v = solver.eigenvectors().col(3 - k);
        fix_phase(v);
        out.vectors.col(k) = v;
    }
    return out;
}

namespace {

Mat4 psd_sqrt(const Mat4 &m) {
    HermitianEigen e = eig_hermitian(m);
    Eigen::Vector4d roots;
    for (int k = 0; k < 4; k++) {
        // Rounding noise on null directions would otherwise surface as
        // spurious square roots of order 1e-8.
        roots[k] = e.values[k] > 1e-13 ? std::sqrt(e.values[k]) : 0.0;
    }
    return e.vectors * roots.cast<cplx>().asDiagonal() * e.vectors.adjoint();
}

}  // namespace

double fidelity(const DensityMatrix &a, const DensityMatrix &b) {
    Mat4 product = psd_sqrt(a.matrix()) * psd_sqrt(b.matrix());
    Eigen::JacobiSVD<Mat4> svd(product);
    double trace_norm = svd.singularValues().sum();
    return std::clamp(trace_norm * trace_norm, 0.0, 1.0);
}

DensityMatrix random_density(int rank, uint64_t seed) {
    if (rank < 1 || rank > 4) {
        throw InvalidInput("random_density: rank must be in 1..4");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Eigen::Matrix<cplx, 4, Eigen::Dynamic> g(4, rank);
    for (int c = 0; c < rank; c++) {
        for (int r = 0; r < 4; r++) {
            g(r, c) = cplx(gauss(rng), gauss(rng));
        }
    }
    Mat4 m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix::from_matrix(hermitize(m));
}

Mat2 random_unitary2(std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    Mat2 g;
    for (int i = 0; i < 4; i++) {
        g(i / 2, i % 2) = cplx(gauss(rng), gauss(rng));
    }
    Eigen::HouseholderQR<Mat2> qr(g);
    Mat2 q = qr.householderQ();
    Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the QR phase ambiguity so the distribution is Haar.
    for (int i = 0; i < 2; i++) {
        double mag = std::abs(r(i, i));
        if (mag > 0) {
            q.col(i) *= r(i, i) / mag;
        }
    }
    return q;
}

Mat4 kron(const Mat2 &a, const Mat2 &b) {
    Mat4 out;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

Mat4 hermitize(const Mat4 &m) {
    return (m + m.adjoint()) * 0.5;
}

double frobenius(const Mat4 &m) {
    return m.norm();
}

namespace pauli {
Mat2 x() {
    Mat2 m;
    m << 0, 1, 1, 0;
    return m;
}
Mat2 y() {
    Mat2 m;
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}
Mat2 z() {
    Mat2 m;
    m << 1, 0, 0, -1;
    return m;
}
}  // namespace pauli

}  // namespace polmix
