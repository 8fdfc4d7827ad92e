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

#include <cmath>
#include <numbers>
#include <sstream>

namespace polmix {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double angle, double period) {
    double r = std::fmod(angle, period);
    if (r < 0) r += period;
    // fmod can return `period` itself after the shift for tiny negatives.
    return r >= period ? 0.0 : r;
}

Vec2 orthogonal_complement(const Vec2 &v) {
    return Vec2(-std::conj(v[1]), std::conj(v[0]));
}

// Leading eigenvector of the 2x2 Hermitian h.
Vec2 top_eigenvector(const Mat2 &h) {
    double a = h(0, 0).real();
    double d = h(1, 1).real();
    cplx b = h(0, 1);
    double top = (a + d) / 2 + std::hypot((a - d) / 2, std::abs(b));
    Vec2 c1(b, top - a);
    Vec2 c2(top - d, std::conj(b));
    Vec2 v = c1.squaredNorm() >= c2.squaredNorm() ? c1 : c2;
    double n = v.norm();
    if (n == 0) {
        return Vec2(1, 0);
    }
    v /= n;
    fix_phase(v);
    return v;
}

// Splits m = exp(i phase) * s with s special unitary, leading-entry phase
// in (-pi/2, pi/2].
Mat2 to_special(const Mat2 &m, double &phase) {
    double half = std::arg(m.determinant()) / 2;
    Mat2 s = m * std::polar(1.0, -half);
    phase += half;
    cplx lead = std::abs(s(0, 0)) > 1e-12 ? s(0, 0) : s(1, 0);
    double arg = std::arg(lead);
    if (arg <= -kPi / 2 || arg > kPi / 2) {
        s = -s;
        phase += kPi;
    }
    return s;
}

}  // namespace

PureState phi_state(double theta) {
    Vec4 a(std::cos(theta), 0, 0, std::sin(theta));
    return PureState::normalized(a);
}

Vec4 SchmidtForm::reconstruct() const {
    return std::polar(1.0, phase) * kron(u.matrix(), v.matrix()) * phi_state(theta).amplitudes();
}

SchmidtForm schmidt_extract(const PureState &psi) {
    Mat2 m;
    m << psi[0], psi[1], psi[2], psi[3];

    Vec2 q1 = top_eigenvector(m.adjoint() * m);
    Vec2 q2 = orthogonal_complement(q1);
    Vec2 mq1 = m * q1;
    double s1 = mq1.norm();
    Vec2 p1 = mq1 / s1;
    Vec2 p2 = orthogonal_complement(p1);
    cplx overlap = p2.dot(m * q2);
    double s2 = std::abs(overlap);
    if (s2 > 0) {
        p2 *= overlap / s2;
    }

    Mat2 u;
    u << p1, p2;
    Mat2 v;
    v << q1.conjugate(), q2.conjugate();

    SchmidtForm out;
    out.theta = std::atan2(s2, s1);
    double phase = 0;
    out.u = LocalUnitary::from_matrix(to_special(u, phase), 1e-9);
    out.v = LocalUnitary::from_matrix(to_special(v, phase), 1e-9);
    out.phase = wrap(phase, 2 * kPi);
    return out;
}

Mat2 retarder(double delta, double angle) {
    double c = std::cos(angle);
    double s = std::sin(angle);
    Mat2 rot;
    rot << c, -s, s, c;
    Mat2 core = Mat2::Zero();
    core(0, 0) = std::polar(1.0, -delta / 2);
    core(1, 1) = std::polar(1.0, delta / 2);
    return rot * core * rot.transpose();
}

Mat2 quarter_wave(double angle) {
    return retarder(kPi / 2, angle);
}

Mat2 half_wave(double angle) {
    return retarder(kPi, angle);
}

double residual_up_to_phase(const Mat2 &a, const Mat2 &b) {
    cplx overlap = (b.adjoint() * a).trace();
    cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx(1);
    return (a - phase * b).norm();
}

WaveplateTriple waveplate_decompose(const LocalUnitary &u) {
    // Q(q2) H(h) Q(q1) = +-Y(2 q2) X(2(q1 + q2) - 4h) Y(-2 q1), with Y, X the
    // spin-1/2 rotations generated by sigma_y, sigma_x. Conjugating by the
    // 120 degree rotation about (1,1,1) turns the YXY Euler form into ZYZ.
    const Mat2 &m = u.matrix();
    Mat2 s = m * std::polar(1.0, -std::arg(m.determinant()) / 2);
    Mat2 cycle = (Mat2::Identity() - cplx(0, 1) * (pauli::x() + pauli::y() + pauli::z())) * 0.5;
    Mat2 zyz = cycle * s * cycle.adjoint();

    double gamma = 2 * std::atan2(std::abs(zyz(1, 0)), std::abs(zyz(0, 0)));
    double alpha;
    double beta;
    if (std::abs(zyz(1, 0)) < 1e-12) {
        beta = 0;
        alpha = -2 * std::arg(zyz(0, 0));
    } else if (std::abs(zyz(0, 0)) < 1e-12) {
        beta = 0;
        alpha = 2 * std::arg(zyz(1, 0));
    } else {
        double sum = -2 * std::arg(zyz(0, 0));
        double diff = 2 * std::arg(zyz(1, 0));
        alpha = (sum + diff) / 2;
        beta = (sum - diff) / 2;
    }

    WaveplateTriple out;
    out.qwp2 = wrap(alpha / 2, kPi);
    out.qwp1 = wrap(-beta / 2, kPi);
    out.hwp = wrap((alpha - beta - gamma) / 4, kPi);
    return out;
}

Mat2 FilterSpec::matrix() const {
    Mat2 m = Mat2::Zero();
    m(0, 0) = f_h;
    m(1, 1) = f_v;
    return m;
}

FilterSpec design_filter(double alpha, double beta, FilterDirection direction) {
    constexpr double slack = 1e-12;
    if (!(beta >= -slack && beta <= alpha + slack && alpha <= kPi / 4 + slack)) {
        std::ostringstream msg;
        msg << "design_filter: need 0 <= beta <= alpha <= pi/4, got alpha = " << alpha << ", beta = " << beta;
        throw InvalidInput(msg.str());
    }
    if (alpha - beta <= 1e-15) {
        return FilterSpec{};
    }
    double ratio = std::tan(beta) / std::tan(alpha);
    FilterSpec f;
    if (direction == FilterDirection::raise) {
        if (beta <= 0) {
            throw Infeasible("design_filter: cannot raise entanglement from a product state (beta = 0)");
        }
        f.f_h = ratio;
        f.success_prob = std::pow(std::sin(beta) / std::sin(alpha), 2);
    } else {
        f.f_v = ratio;
        f.success_prob = std::pow(std::cos(alpha) / std::cos(beta), 2);
    }
    return f;
}

}  // namespace polmix
