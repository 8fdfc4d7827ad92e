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

#include "polmix/circuit.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace polmix {

namespace {

bool in_unit_interval(double x) {
    return x >= 0 && x <= 1;
}

// Joint amplitude layout: ((i * 4 + j) * 4 + polarization).
using JointVector = Eigen::Matrix<cplx, 64, 1>;

int joint_index(int i, int j, int pol) {
    return (i * 4 + j) * 4 + pol;
}

}  // namespace

void CircuitSpec::validate() const {
    for (size_t k = 0; k < etas.size(); k++) {
        if (!in_unit_interval(etas[k])) {
            throw InvalidInput("circuit: eta" + std::to_string(k + 1) + " outside [0, 1]");
        }
    }
    if (!(theta0 >= 0 && theta0 <= std::numbers::pi / 4 + 1e-12)) {
        throw InvalidInput("circuit: theta0 outside [0, pi/4]");
    }
    if (!(coupler_efficiency > 0 && coupler_efficiency <= 1)) {
        throw InvalidInput("circuit: coupler_efficiency outside (0, 1]");
    }
    for (const auto &f : filters) {
        if (f && !(in_unit_interval(f->f_h) && in_unit_interval(f->f_v))) {
            throw InvalidInput("circuit: filter attenuation outside [0, 1]");
        }
    }
}

LocationAmplitudes apply_vbs(const LocationAmplitudes &amps, double eta, int mode_a, int mode_b) {
    if (!in_unit_interval(eta)) {
        throw InvalidInput("apply_vbs: eta outside [0, 1]");
    }
    if (mode_a == mode_b || mode_a < 0 || mode_a > 3 || mode_b < 0 || mode_b > 3) {
        throw InvalidInput("apply_vbs: invalid mode pair");
    }
    double t = std::sqrt(eta);
    double r = std::sqrt(1 - eta);
    LocationAmplitudes out = amps;
    out[mode_a] = t * amps[mode_a] - r * amps[mode_b];
    out[mode_b] = r * amps[mode_a] + t * amps[mode_b];
    return out;
}

LocationAmplitudes arm_amplitudes(const std::array<double, 6> &etas, int arm) {
    // Splitter indices per arm: first split, upper split, lower split.
    static constexpr int kSplitters[2][3] = {{0, 2, 3}, {1, 4, 5}};
    LocationAmplitudes amps(1, 0, 0, 0);
    amps = apply_vbs(amps, etas[kSplitters[arm][0]], 0, 2);
    amps = apply_vbs(amps, etas[kSplitters[arm][1]], 0, 1);
    amps = apply_vbs(amps, etas[kSplitters[arm][2]], 2, 3);
    return amps;
}

double JointState::survival() const {
    double s = 0;
    for (const auto &row : weights) {
        for (double w : row) {
            s += w;
        }
    }
    return s;
}

JointState evolve(const CircuitSpec &circuit) {
    circuit.validate();
    LocationAmplitudes loc_a = arm_amplitudes(circuit.etas, 0);
    LocationAmplitudes loc_b = arm_amplitudes(circuit.etas, 1);
    Vec4 source = phi_state(circuit.theta0).amplitudes();

    // Source pair, then both photons routed through their splitters.
    JointVector psi = JointVector::Zero();
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            for (int pol = 0; pol < 4; pol++) {
                psi[joint_index(i, j, pol)] = loc_a[i] * loc_b[j] * source[pol];
            }
        }
    }

    // Per-path filter then rotation on A, rotation on B.
    for (int i = 0; i < 4; i++) {
        Mat2 op_a = circuit.rotations[i].u.matrix();
        if (circuit.filters[i]) {
            op_a = op_a * circuit.filters[i]->matrix();
        }
        for (int j = 0; j < 4; j++) {
            Mat4 op = kron(op_a, circuit.rotations[j].v.matrix());
            Vec4 block = psi.segment<4>(joint_index(i, j, 0));
            psi.segment<4>(joint_index(i, j, 0)) = op * block;
        }
    }

    // Couplers: coherence between different location pairs is lost.
    JointState out;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            Vec4 block = psi.segment<4>(joint_index(i, j, 0));
            double w = block.squaredNorm();
            out.weights[i][j] = circuit.coupler_efficiency * w;
            out.blocks[i][j] = w > 0 ? Mat4(block * block.adjoint() / w) : Mat4(Mat4::Zero());
        }
    }
    return out;
}

PostSelected postselect_coincidence(const JointState &state) {
    double f = 0;
    Mat4 acc = Mat4::Zero();
    for (int i = 0; i < 4; i++) {
        f += state.weights[i][i];
        acc += state.weights[i][i] * state.blocks[i][i];
    }
    if (!(f > 1e-15)) {
        throw Infeasible("postselect_coincidence: no weight on coinciding paths (F = 0)");
    }
    return {DensityMatrix::from_matrix(hermitize(acc / f)), f};
}

void Geometry::validate() const {
    for (int i = 0; i < 4; i++) {
        if (!(lengths_a[i] > 0) || !(lengths_b[i] > 0)) {
            throw InvalidInput("geometry: path lengths must be positive");
        }
    }
    if (!(l_coh >= 0) || !(l_pump >= 0) || !(window_T > 0)) {
        throw InvalidInput("geometry: coherence lengths must be >= 0 and the window > 0");
    }
    if (!(kappa >= 1)) {
        throw InvalidInput("geometry: kappa must be >= 1");
    }
}

std::string to_string(ViolationCode code) {
    switch (code) {
        case ViolationCode::mismatched_arm_length:
            return "MISMATCHED_ARM_LENGTH";
        case ViolationCode::indistinguishable_paths:
            return "INDISTINGUISHABLE_PATHS";
        case ViolationCode::window_too_wide:
            return "WINDOW_TOO_WIDE";
    }
    return "UNKNOWN";
}

std::vector<Violation> validate_geometry(const Geometry &g) {
    g.validate();
    std::vector<Violation> out;
    const double window_length = kSpeedOfLight * g.window_T;
    const double required = g.kappa * std::max(g.l_coh, g.l_pump);

    for (int i = 0; i < 4; i++) {
        double mismatch = std::abs(g.lengths_a[i] - g.lengths_b[i]);
        if (!(mismatch < window_length)) {
            std::ostringstream msg;
            msg << "path " << i + 1 << ": |L_A - L_B| = " << mismatch << " m is not below cT = " << window_length
                << " m";
            out.push_back({ViolationCode::mismatched_arm_length, '*', i + 1, i + 1, mismatch - window_length,
                           msg.str()});
        }
    }

    const std::array<const std::array<double, 4> *, 2> arms{&g.lengths_a, &g.lengths_b};
    for (int arm = 0; arm < 2; arm++) {
        const auto &len = *arms[arm];
        char name = arm == 0 ? 'A' : 'B';
        for (int i = 0; i < 4; i++) {
            for (int j = i + 1; j < 4; j++) {
                double delta = std::abs(len[i] - len[j]);
                if (!(delta >= required)) {
                    std::ostringstream msg;
                    msg << "arm " << name << " paths " << i + 1 << "," << j + 1 << ": difference " << delta
                        << " m below " << required << " m";
                    out.push_back({ViolationCode::indistinguishable_paths, name, i + 1, j + 1, required - delta,
                                   msg.str()});
                }
                if (!(window_length < delta)) {
                    std::ostringstream msg;
                    msg << "arm " << name << " paths " << i + 1 << "," << j + 1 << ": cT = " << window_length
                        << " m not below difference " << delta << " m";
                    out.push_back(
                        {ViolationCode::window_too_wide, name, i + 1, j + 1, window_length - delta, msg.str()});
                }
            }
        }
    }
    return out;
}

}  // namespace polmix
