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

#ifndef POLMIX_CIRCUIT_H
#define POLMIX_CIRCUIT_H

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "polmix/linalg.h"
#include "polmix/local_structure.h"

namespace polmix {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Local rotations applied on one location path: u on photon A, v on photon B.
struct PathRotations {
    LocalUnitary u = LocalUnitary::identity();
    LocalUnitary v = LocalUnitary::identity();
};

/// Six-splitter layout. Photon A meets eta1 (paths 1,2 vs 3,4), then eta3
/// (1 vs 2) and eta4 (3 vs 4); photon B meets eta2, eta5, eta6 likewise.
/// Path indices are 0-based here and 1-based in files.
///
/// The two-component scheme uses eta1 = eta2 = eta4 = eta6 = 1, with its own
/// pair of splitters mapped onto eta3 and eta5 so that paths 1 and 2 are
/// the active ones.
struct CircuitSpec {
    std::array<double, 6> etas{1, 1, 1, 1, 1, 1};
    std::array<PathRotations, 4> rotations{};
    std::array<std::optional<FilterSpec>, 4> filters{};  // photon A
    double theta0 = 0;
    double coupler_efficiency = 1;

    /// Throws InvalidInput on out-of-range fields.
    void validate() const;
};

/// Location amplitudes of one photon over its four paths.
using LocationAmplitudes = Eigen::Vector4d;

/// Splits mode `a` into `a` and `b`: |a> -> sqrt(eta)|a> + sqrt(1-eta)|b>,
/// completed to a real rotation on the (a, b) pair.
LocationAmplitudes apply_vbs(const LocationAmplitudes &amps, double eta, int mode_a, int mode_b);

/// Path amplitudes of photon A (arm 0) or B (arm 1) after its three splitters.
LocationAmplitudes arm_amplitudes(const std::array<double, 6> &etas, int arm);

/// Polarization state conditioned on location pair (i, j) after the couplers
/// have removed all coherence between distinguishable pairs.
struct JointState {
    std::array<std::array<double, 4>, 4> weights{};  // p_ij
    std::array<std::array<Mat4, 4>, 4> blocks{};     // unit trace where weight > 0

    double survival() const;
};

JointState evolve(const CircuitSpec &circuit);

struct PostSelected {
    DensityMatrix rho;
    double success;  // F = sum_i p_ii
};

/// Keeps only equal-path pairs. Throws Infeasible when nothing coincides.
PostSelected postselect_coincidence(const JointState &state);

struct Geometry {
    std::array<double, 4> lengths_a{1, 2, 3, 4};  // metres
    std::array<double, 4> lengths_b{1, 2, 3, 4};
    double l_coh = 1e-4;     // single-photon coherence length, metres
    double l_pump = 1e-4;    // pump coherence length, metres
    double window_T = 1e-9;  // coincidence window, seconds
    double kappa = 10;       // required ratio of path difference to coherence length

    void validate() const;
};

enum class ViolationCode {
    mismatched_arm_length,
    indistinguishable_paths,
    window_too_wide,
};

std::string to_string(ViolationCode code);

struct Violation {
    ViolationCode code;
    char arm;     // 'A', 'B', or '*' for a cross-arm pair
    int path_i;   // 1-based
    int path_j;
    double margin;  // how far past the limit, in metres
    std::string message;
};

/// Checks arm matching (|L_i^A - L_i^B| < cT), distinguishability
/// (Delta_ij >= kappa * max(l_coh, l_pump)) and the window condition
/// (cT < Delta_ij) for every path pair on both arms.
std::vector<Violation> validate_geometry(const Geometry &g);

}  // namespace polmix

#endif
