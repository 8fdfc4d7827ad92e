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

#include "polmix/local_structure.h"

#include <gtest/gtest.h>

#include "polmix/entanglement.h"

using namespace polmix;

namespace {

PureState random_pure(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Vec4 v;
    for (int i = 0; i < 4; i++) v[i] = cplx(g(rng), g(rng));
    return PureState::normalized(v);
}

Vec4 filtered(const FilterSpec &f, double theta) {
    return kron(f.matrix(), Mat2::Identity()) * phi_state(theta).amplitudes();
}

}  // namespace

TEST(local_structure, schmidt_round_trip) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; t++) {
        PureState psi = random_pure(rng);
        SchmidtForm s = schmidt_extract(psi);
        EXPECT_LT((s.reconstruct() - psi.amplitudes()).norm(), 1e-12);
        EXPECT_GE(s.theta, 0);
        EXPECT_LE(s.theta, M_PI / 4 + 1e-15);
        EXPECT_NEAR(std::sin(2 * s.theta), concurrence(psi), 1e-12);
        EXPECT_NEAR(s.u.matrix().determinant().real(), 1, 1e-12);
        EXPECT_NEAR(s.v.matrix().determinant().real(), 1, 1e-12);
        EXPECT_GE(s.phase, 0);
        EXPECT_LT(s.phase, 2 * M_PI);
    }
}

TEST(local_structure, schmidt_of_canonical_states) {
    for (double t : {0.0, 0.2, M_PI / 4}) {
        SchmidtForm s = schmidt_extract(phi_state(t));
        EXPECT_NEAR(s.theta, t, 1e-12);
        EXPECT_LT((s.reconstruct() - phi_state(t).amplitudes()).norm(), 1e-12);
    }
    // Product state with both photons vertical.
    SchmidtForm s = schmidt_extract(PureState::from_amplitudes(Vec4(0, 0, 0, 1)));
    EXPECT_NEAR(s.theta, 0, 1e-12);
    EXPECT_LT((s.reconstruct() - Vec4(0, 0, 0, 1)).norm(), 1e-12);
}

TEST(local_structure, waveplate_matrices) {
    // Half-wave at 0: diag(-i, i); a quarter-wave squared is a half-wave.
    Mat2 h = half_wave(0);
    EXPECT_NEAR(std::abs(h(0, 0) - cplx(0, -1)), 0, 1e-15);
    EXPECT_NEAR(std::abs(h(1, 1) - cplx(0, 1)), 0, 1e-15);
    for (double a : {0.0, 0.3, 1.1}) {
        EXPECT_LT((quarter_wave(a) * quarter_wave(a) - half_wave(a)).norm(), 1e-14);
    }
    // Half-wave at 45 degrees swaps H and V up to phase.
    Mat2 swap;
    swap << 0, 1, 1, 0;
    EXPECT_LT(residual_up_to_phase(half_wave(M_PI / 4), swap), 1e-14);
}

TEST(local_structure, waveplate_synthesis) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 300; t++) {
        Mat2 m = random_unitary2(rng);
        WaveplateTriple w = waveplate_decompose(LocalUnitary::from_matrix(m));
        EXPECT_LT(residual_up_to_phase(w.jones(), m), 1e-10);
        for (double a : {w.qwp1, w.hwp, w.qwp2}) {
            EXPECT_GE(a, 0);
            EXPECT_LT(a, M_PI);
        }
    }
}

TEST(local_structure, waveplate_synthesis_special_cases) {
    std::vector<Mat2> cases = {Mat2::Identity(), pauli::x(), pauli::y(), pauli::z(), half_wave(0.4),
                               quarter_wave(0.25)};
    Mat2 diag;
    diag << cplx(0, 1), 0, 0, cplx(1, 0);
    cases.push_back(diag);
    for (const Mat2 &m : cases) {
        WaveplateTriple w = waveplate_decompose(LocalUnitary::from_matrix(m));
        EXPECT_LT(residual_up_to_phase(w.jones(), m), 1e-10);
    }
}

TEST(local_structure, filter_raise) {
    for (double alpha : {0.3, 0.6, M_PI / 4}) {
        for (double beta : {0.05, 0.2, 0.29}) {
            FilterSpec f = design_filter(alpha, beta, FilterDirection::raise);
            double k1 = std::pow(std::sin(beta) / std::sin(alpha), 2);
            EXPECT_NEAR(f.success_prob, k1, 1e-12);
            Vec4 out = filtered(f, beta);
            EXPECT_NEAR(out.squaredNorm(), k1, 1e-12);
            EXPECT_LT((out.normalized() - phi_state(alpha).amplitudes()).norm(), 1e-12);
            EXPECT_LE(std::max(f.f_h, f.f_v), 1 + 1e-15);
        }
    }
}

TEST(local_structure, filter_lower) {
    for (double alpha : {0.3, 0.6, M_PI / 4}) {
        for (double beta : {0.0, 0.2, 0.29}) {
            FilterSpec f = design_filter(alpha, beta, FilterDirection::lower);
            double k2 = std::pow(std::cos(alpha) / std::cos(beta), 2);
            EXPECT_NEAR(f.success_prob, k2, 1e-12);
            Vec4 out = filtered(f, alpha);
            EXPECT_NEAR(out.squaredNorm(), k2, 1e-12);
            EXPECT_LT((out.normalized() - phi_state(beta).amplitudes()).norm(), 1e-12);
        }
    }
}

TEST(local_structure, filter_errors_and_identity) {
    EXPECT_THROW(design_filter(0.5, 0.0, FilterDirection::raise), Infeasible);
    EXPECT_THROW(design_filter(0.2, 0.5, FilterDirection::raise), InvalidInput);
    EXPECT_THROW(design_filter(1.0, 0.5, FilterDirection::lower), InvalidInput);
    FilterSpec f = design_filter(0.5, 0.5, FilterDirection::raise);
    EXPECT_EQ(f.f_h, 1);
    EXPECT_EQ(f.f_v, 1);
    EXPECT_EQ(f.success_prob, 1);
}
