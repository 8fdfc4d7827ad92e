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

#ifndef POLMIX_LOCAL_STRUCTURE_H
#define POLMIX_LOCAL_STRUCTURE_H

#include "polmix/linalg.h"

namespace polmix {

/// cos(theta)|HH> + sin(theta)|VV>.
PureState phi_state(double theta);

/// psi = exp(i phase) (u x v) |Phi(theta)>, theta in [0, pi/4]. u and v are
/// special unitary with the phase of their leading entry in (-pi/2, pi/2].
struct SchmidtForm {
    double theta = 0;
    LocalUnitary u = LocalUnitary::identity();
    LocalUnitary v = LocalUnitary::identity();
    double phase = 0;

    Vec4 reconstruct() const;
};

SchmidtForm schmidt_extract(const PureState &psi);

/// Jones matrix of a linear retarder with retardance `delta` and fast axis at
/// `angle` from horizontal, in the traceless-phase form
/// R(angle) diag(exp(-i delta/2), exp(i delta/2)) R(-angle).
Mat2 retarder(double delta, double angle);
Mat2 quarter_wave(double angle);
Mat2 half_wave(double angle);

/// Fast-axis angles (radians, in [0, pi)) of a QWP -> HWP -> QWP sequence.
/// Light meets qwp1 first.
struct WaveplateTriple {
    double qwp1 = 0;
    double hwp = 0;
    double qwp2 = 0;

    Mat2 jones() const { return quarter_wave(qwp2) * half_wave(hwp) * quarter_wave(qwp1); }
};

WaveplateTriple waveplate_decompose(const LocalUnitary &u);

/// min over phi of ||a - exp(i phi) b||_F.
double residual_up_to_phase(const Mat2 &a, const Mat2 &b);

enum class FilterDirection {
    raise,  // Phi(beta) -> Phi(alpha), succeeds with sin^2(beta)/sin^2(alpha)
    lower,  // Phi(alpha) -> Phi(beta), succeeds with cos^2(alpha)/cos^2(beta)
};

/// Diagonal amplitude attenuation diag(f_h, f_v) on photon A.
struct FilterSpec {
    double f_h = 1;
    double f_v = 1;
    double success_prob = 1;

    Mat2 matrix() const;
};

/// Maximal-probability local filter converting between Schmidt angles
/// 0 <= beta <= alpha <= pi/4. Throws Infeasible for a raise from beta = 0.
FilterSpec design_filter(double alpha, double beta, FilterDirection direction);

}  // namespace polmix

#endif
