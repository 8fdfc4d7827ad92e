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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace polmix::oracle {

double two_state_grid(double k, double ratio, bool raised_first, double step) {
    const int n = static_cast<int>(std::lround(1 / step));
    double best = 0;
    for (int i = 0; i <= n; i++) {
        const double e1 = static_cast<double>(i) / n;
        // Weight of each component after both splitters, before normalization.
        // raised_first:  first = k e1 e2,  second = (1-e1)(1-e2),  second = ratio * first
        // otherwise:     first = e1 e2,    second = k (1-e1)(1-e2), second = ratio * first
        const double kf = raised_first ? k : 1.0;
        const double ks = raised_first ? 1.0 : k;
        // ks (1-e1)(1-e2) = ratio kf e1 e2  ->  solve for e2
        const double lhs = ks * (1 - e1);
        const double rhs = ratio * kf * e1;
        if (lhs + rhs == 0) continue;
        const double e2 = lhs / (lhs + rhs);
        const double f = kf * e1 * e2 + ks * (1 - e1) * (1 - e2);
        best = std::max(best, f);
    }
    return best;
}

namespace {

double arm_success(const std::array<double, 4> &w, double e1, double e3, double e4) {
    const double a[4] = {e1 * e3, e1 * (1 - e3), (1 - e1) * e4, (1 - e1) * (1 - e4)};
    double s = 0;
    for (int i = 0; i < 4; i++) {
        if (w[i] == 0) continue;
        if (a[i] <= 0) return 0;
        s += w[i] / a[i];
    }
    return 1 / s;
}

struct Best {
    double f = -1;
    double e1 = 0, e3 = 0, e4 = 0;
};

Best scan(const std::array<double, 4> &w, const double center[3], double half, double step) {
    Best best;
    const int n = static_cast<int>(std::lround(2 * half / step));
    for (int i = 0; i <= n; i++) {
        const double e1 = std::clamp(center[0] - half + i * step, 0.0, 1.0);
        for (int j = 0; j <= n; j++) {
            const double e3 = std::clamp(center[1] - half + j * step, 0.0, 1.0);
            for (int l = 0; l <= n; l++) {
                const double e4 = std::clamp(center[2] - half + l * step, 0.0, 1.0);
                const double f = arm_success(w, e1, e3, e4);
                if (f > best.f) best = {f, e1, e3, e4};
            }
        }
    }
    return best;
}

}  // namespace

double general_grid(const std::array<double, 4> &w, double resolution) {
    const double coarse = 0.02;
    const double mid[3] = {0.5, 0.5, 0.5};
    Best b = scan(w, mid, 0.5, coarse);
    const double c[3] = {b.e1, b.e3, b.e4};
    return scan(w, c, coarse, resolution).f;
}

std::array<double, 4> spin_flip_roots(const Mat4 &rho) {
    Mat2 y;
    y << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
    Mat4 yy = kron(y, y);
    Mat4 tilde = yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Mat4> es(rho * tilde);
    std::array<double, 4> out{};
    for (int i = 0; i < 4; i++) {
        out[i] = std::sqrt(std::max(0.0, es.eigenvalues()[i].real()));
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double concurrence_direct(const Mat4 &rho) {
    auto l = spin_flip_roots(rho);
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double fidelity_direct(const Mat4 &a, const Mat4 &b) {
    Mat4 sa = a.sqrt();
    Mat4 inner = sa * b * sa;
    Mat4 root = inner.sqrt();
    double t = root.trace().real();
    return t * t;
}

}  // namespace polmix::oracle
