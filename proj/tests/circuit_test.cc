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

#include <gtest/gtest.h>

using namespace polmix;

namespace {

bool has_code(const std::vector<Violation> &v, ViolationCode code) {
    for (const Violation &x : v) {
        if (x.code == code) return true;
    }
    return false;
}

}  // namespace

TEST(circuit, beam_splitter_conserves_and_splits) {
    LocationAmplitudes in(1, 0, 0, 0);
    LocationAmplitudes out = apply_vbs(in, 0.3, 0, 2);
    EXPECT_NEAR(out[0], std::sqrt(0.3), 1e-15);
    EXPECT_NEAR(out[2], std::sqrt(0.7), 1e-15);
    EXPECT_NEAR(out.squaredNorm(), 1, 1e-15);
    EXPECT_THROW(apply_vbs(in, 1.5, 0, 2), InvalidInput);
    EXPECT_THROW(apply_vbs(in, 0.5, 1, 1), InvalidInput);
}

TEST(circuit, arm_path_probabilities) {
    std::array<double, 6> etas{0.6, 0.3, 0.2, 0.9, 0.5, 0.4};
    LocationAmplitudes a = arm_amplitudes(etas, 0);
    LocationAmplitudes b = arm_amplitudes(etas, 1);
    // Photon A: eta1 first, then eta3 on paths 1/2 and eta4 on paths 3/4.
    EXPECT_NEAR(a[0] * a[0], 0.6 * 0.2, 1e-15);
    EXPECT_NEAR(a[1] * a[1], 0.6 * 0.8, 1e-15);
    EXPECT_NEAR(a[2] * a[2], 0.4 * 0.9, 1e-15);
    EXPECT_NEAR(a[3] * a[3], 0.4 * 0.1, 1e-15);
    EXPECT_NEAR(b[0] * b[0], 0.3 * 0.5, 1e-15);
    EXPECT_NEAR(b[3] * b[3], 0.7 * 0.6, 1e-15);
}

TEST(circuit, trivial_spec_is_lossless) {
    CircuitSpec c;
    c.theta0 = 0.3;
    JointState js = evolve(c);
    EXPECT_NEAR(js.survival(), 1, 1e-15);
    PostSelected out = postselect_coincidence(js);
    EXPECT_NEAR(out.success, 1, 1e-15);
    Mat4 expect = phi_state(0.3).projector();
    EXPECT_LT(frobenius(out.rho.matrix() - expect), 1e-14);
}

TEST(circuit, rotations_act_locally) {
    std::mt19937_64 rng(17);
    CircuitSpec c;
    c.theta0 = 0.5;
    Mat2 u = random_unitary2(rng);
    Mat2 v = random_unitary2(rng);
    c.rotations[0].u = LocalUnitary::from_matrix(u);
    c.rotations[0].v = LocalUnitary::from_matrix(v);
    PostSelected out = postselect_coincidence(evolve(c));
    Vec4 psi = kron(u, v) * phi_state(0.5).amplitudes();
    EXPECT_LT(frobenius(out.rho.matrix() - psi * psi.adjoint()), 1e-13);
}

TEST(circuit, postselection_mixes_coinciding_paths) {
    // Paths 1 and 2 only, weights from the splitters, different rotations.
    CircuitSpec c;
    c.theta0 = M_PI / 4;
    c.etas = {1, 1, 0.7, 1, 0.4, 1};
    c.rotations[1].u = LocalUnitary::from_matrix(pauli::x());
    PostSelected out = postselect_coincidence(evolve(c));
    double p11 = 0.7 * 0.4;
    double p22 = 0.3 * 0.6;
    EXPECT_NEAR(out.success, p11 + p22, 1e-15);
    Vec4 a = phi_state(M_PI / 4).amplitudes();
    Vec4 b = kron(pauli::x(), Mat2::Identity()) * a;
    Mat4 expect = (p11 * a * a.adjoint() + p22 * b * b.adjoint()) / (p11 + p22);
    EXPECT_LT(frobenius(out.rho.matrix() - expect), 1e-14);
}

TEST(circuit, filter_reduces_weight) {
    CircuitSpec c;
    c.theta0 = 0.2;
    FilterSpec f = design_filter(0.6, 0.2, FilterDirection::raise);
    c.filters[0] = f;
    PostSelected out = postselect_coincidence(evolve(c));
    EXPECT_NEAR(out.success, f.success_prob, 1e-14);
    EXPECT_LT(frobenius(out.rho.matrix() - phi_state(0.6).projector()), 1e-13);
}

TEST(circuit, no_coincidence_is_infeasible) {
    CircuitSpec c;
    c.etas = {1, 0, 1, 1, 1, 1};  // A always in path 1, B never in paths 1/2
    EXPECT_THROW(postselect_coincidence(evolve(c)), Infeasible);
}

TEST(circuit, spec_validation) {
    CircuitSpec c;
    c.etas[2] = -0.1;
    EXPECT_THROW(c.validate(), InvalidInput);
    c.etas[2] = 1;
    c.theta0 = 1;
    EXPECT_THROW(c.validate(), InvalidInput);
}

TEST(circuit, default_geometry_is_valid) {
    EXPECT_TRUE(validate_geometry(Geometry{}).empty());
}

TEST(circuit, geometry_arm_mismatch) {
    Geometry g;
    g.lengths_b[2] = 3.5;  // cT = 0.3 m
    auto v = validate_geometry(g);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].code, ViolationCode::mismatched_arm_length);
    EXPECT_EQ(v[0].path_i, 3);
    EXPECT_NEAR(v[0].margin, 0.5 - kSpeedOfLight * 1e-9, 1e-12);
}

TEST(circuit, geometry_indistinguishable) {
    Geometry g;
    g.lengths_a = {1, 1.0005, 3, 4};
    g.lengths_b = g.lengths_a;
    g.window_T = 1e-13;  // keep the window out of the way
    auto v = validate_geometry(g);
    EXPECT_TRUE(has_code(v, ViolationCode::indistinguishable_paths));
    EXPECT_FALSE(has_code(v, ViolationCode::window_too_wide));
    EXPECT_FALSE(has_code(v, ViolationCode::mismatched_arm_length));
    EXPECT_EQ(v.size(), 2u);  // one per arm
    // kappa = 10 times the larger coherence length is the threshold.
    g.lengths_a = {1, 1.0011, 3, 4};
    g.lengths_b = g.lengths_a;
    EXPECT_TRUE(validate_geometry(g).empty());
}

TEST(circuit, geometry_window_too_wide) {
    Geometry g;
    g.window_T = 5e-9;  // cT ~ 1.5 m exceeds the 1 m path spacing
    auto v = validate_geometry(g);
    EXPECT_TRUE(has_code(v, ViolationCode::window_too_wide));
    EXPECT_FALSE(has_code(v, ViolationCode::indistinguishable_paths));
}

TEST(circuit, geometry_rejects_nonsense) {
    Geometry g;
    g.lengths_a[0] = -1;
    EXPECT_THROW(validate_geometry(g), InvalidInput);
    EXPECT_EQ(to_string(ViolationCode::window_too_wide), "WINDOW_TOO_WIDE");
}
