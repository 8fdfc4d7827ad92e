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

#ifndef POLMIX_LINALG_H
#define POLMIX_LINALG_H

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <string>

#include "polmix/errors.h"

namespace polmix {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;

// Tolerance ledger shared by every module.
namespace tol {
inline constexpr double kPhysical = 1e-10;        // hermiticity, trace, PSD, norms
inline constexpr double kReconstruction = 1e-9;   // Frobenius residuals
inline constexpr double kCrossCheck = 1e-7;       // optimizer / decomposition cross-checks
inline constexpr double kRankCutoff = 1e-12;      // eigenvalues at or below count as zero
}  // namespace tol

/// Violation magnitudes of the three density-matrix conditions. A field is the
/// measured defect, zero when the condition holds exactly.
struct PhysicalityReport {
    double hermiticity = 0;  // max |M - M^dagger| entrywise
    double trace = 0;        // |Tr M - 1|
    double psd = 0;          // max(0, -lambda_min)
    bool finite = true;
    bool ok = false;

    std::string describe() const;
};

PhysicalityReport check_physical(const Mat4 &m, double tolerance = tol::kPhysical);

inline bool is_physical(const Mat4 &m, double tolerance = tol::kPhysical) {
    return check_physical(m, tolerance).ok;
}

/// Normalized two-photon polarization amplitudes in the order HH, HV, VH, VV.
class PureState {
   public:
    static PureState from_amplitudes(const Vec4 &amplitudes, double tolerance = tol::kPhysical);
    /// Rescales a nonzero vector to unit norm.
    static PureState normalized(const Vec4 &amplitudes);

    const Vec4 &amplitudes() const { return amps_; }
    cplx operator[](int i) const { return amps_[i]; }
    Mat4 projector() const { return amps_ * amps_.adjoint(); }

   private:
    explicit PureState(const Vec4 &a) : amps_(a) {}
    Vec4 amps_;
};

/// 4x4 Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
   public:
    /// Throws InvalidInput carrying the PhysicalityReport text on failure.
    static DensityMatrix from_matrix(const Mat4 &m, double tolerance = tol::kPhysical);
    static DensityMatrix from_pure(const PureState &psi);
    static DensityMatrix maximally_mixed();

    const Mat4 &matrix() const { return m_; }
    double purity() const { return (m_ * m_).trace().real(); }

   private:
    explicit DensityMatrix(const Mat4 &m) : m_(m) {}
    Mat4 m_;
};

class LocalUnitary {
   public:
    static LocalUnitary from_matrix(const Mat2 &m, double tolerance = tol::kPhysical);
    static LocalUnitary identity() { return LocalUnitary(Mat2::Identity()); }

    const Mat2 &matrix() const { return m_; }

   private:
    explicit LocalUnitary(const Mat2 &m) : m_(m) {}
    Mat2 m_;
};

/// Eigenpairs of a Hermitian 4x4 matrix, eigenvalues descending. Each
/// eigenvector has its first component with modulus above 1e-10 made real
/// and positive.
struct HermitianEigen {
    Eigen::Vector4d values;
    Mat4 vectors;  // column k pairs with values[k]
};

HermitianEigen eig_hermitian(const Mat4 &m);

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2, evaluated as the squared
/// trace norm of sqrt(a) sqrt(b).
double fidelity(const DensityMatrix &a, const DensityMatrix &b);

/// Random density matrix of exactly `rank` nonzero eigenvalues, built from a
/// complex Gaussian 4 x rank factor. Deterministic per seed.
DensityMatrix random_density(int rank, uint64_t seed);

/// Haar-random 2x2 unitary.
Mat2 random_unitary2(std::mt19937_64 &rng);

/// Kronecker product a (photon A) x b (photon B).
Mat4 kron(const Mat2 &a, const Mat2 &b);

/// Puts m into the Hermitian part (m + m^dagger)/2.
Mat4 hermitize(const Mat4 &m);

double frobenius(const Mat4 &m);

/// Multiplies v by the phase that makes its first component of modulus
/// above `threshold` real and positive.
template <typename Vec>
void fix_phase(Vec &v, double threshold = 1e-10) {
    for (Eigen::Index i = 0; i < v.size(); i++) {
        double mag = std::abs(v[i]);
        if (mag > threshold) {
            v *= std::conj(v[i]) / mag;
            v[i] = mag;
            return;
        }
    }
}

namespace pauli {
Mat2 x();
Mat2 y();
Mat2 z();
}  // namespace pauli

}  // namespace polmix

#endif
