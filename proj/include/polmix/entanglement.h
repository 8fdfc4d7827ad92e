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

#ifndef POLMIX_ENTANGLEMENT_H
#define POLMIX_ENTANGLEMENT_H

#include <vector>

#include "polmix/linalg.h"

namespace polmix {

/// Complex square matrix of size at most 4 (the Wootters overlap matrix has
/// size rank(rho)).
using SmallMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;
using SmallVecD = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 4, 1>;

/// sigma_y (x) sigma_y in the HH, HV, VH, VV basis.
const Mat4 &spin_flip_operator();

/// rho~ = (sigma_y x sigma_y) rho* (sigma_y x sigma_y).
Mat4 spin_flip(const DensityMatrix &rho);

/// |psi~> = (sigma_y x sigma_y) |psi*>; applies to unnormalized vectors.
Vec4 spin_flip(const Vec4 &psi);

/// Preconcurrence <psi|psi~> of an unnormalized vector.
cplx preconcurrence(const Vec4 &psi);

/// max(0, l1 - l2 - l3 - l4) with l the descending square roots of the
/// eigenvalues of rho * rho~. Those roots are computed as the singular values
/// of sqrt(rho) * sqrt(rho~), which equals them exactly and avoids square
/// roots of rounding noise.
double concurrence(const DensityMatrix &rho);

/// Descending l1..l4 used by concurrence().
Eigen::Vector4d concurrence_spectrum(const DensityMatrix &rho);

double concurrence(const PureState &psi);

/// Entanglement of formation (bits) from concurrence.
double eof_from_concurrence(double c);

struct TakagiResult {
    SmallMat u;         // unitary with u * tau * u^T = diag(lambdas)
    SmallVecD lambdas;  // non-negative, descending
};

/// Takagi factorization of a complex symmetric matrix (size 1..4).
TakagiResult takagi(const SmallMat &tau);

struct Branch {
    double weight;
    PureState state;
};

/// Pure-state ensemble with equal concurrence per branch, weights descending.
struct Decomposition {
    std::vector<Branch> branches;

    Mat4 mixture() const;
};

/// Equal-entanglement decomposition of rho. Produces rank(rho) branches,
/// except for separable rank-3 states which need four.
///
/// Throws NotConverged when the pairwise equalization exceeds its cap.
Decomposition wootters_decompose(const DensityMatrix &rho);

/// Overlap matrix tau_ij = <v_i|v~_j> over the subnormalized eigenvectors of
/// rho with eigenvalue above the rank cutoff.
SmallMat wootters_overlap(const DensityMatrix &rho);

}  // namespace polmix

#endif
