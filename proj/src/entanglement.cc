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

#include "polmix/entanglement.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace polmix {

namespace {

using Columns = Eigen::Matrix<cplx, 4, Eigen::Dynamic, 0, 4, 4>;

constexpr int kMaxEqualizationSteps = 500;
constexpr double kRatioTolerance = 1e-10;

Mat4 psd_sqrt_cut(const Mat4 &m) {
    HermitianEigen e = eig_hermitian(m);
    Eigen::Vector4d roots;
    for (int k = 0; k < 4; k++) {
        roots[k] = e.values[k] > 1e-13 ? std::sqrt(e.values[k]) : 0.0;
    }
    return e.vectors * roots.cast<cplx>().asDiagonal() * e.vectors.adjoint();
}

struct BranchStats {
    double preconcurrence;  // real part of <z|z~>
    double norm2;
};

BranchStats stats(const Vec4 &z) {
    return {preconcurrence(z).real(), z.squaredNorm()};
}

// Real pairwise rotations z_a <- c z_a + s z_b, z_b <- -s z_a + c z_b keep the
// preconcurrence matrix real and its trace fixed at `target`, so the
// norm-weighted mean of the ratios stays at `target`. Each step drives the
// branch with the largest ratio exactly onto the target.
void equalize_ratios(Columns &z, double target) {
    const int n = static_cast<int>(z.cols());
    for (int step = 0; step < kMaxEqualizationSteps; step++) {
        int hi = 0;
        int lo = 0;
        std::vector<double> ratio(n);
        for (int i = 0; i < n; i++) {
            BranchStats s = stats(z.col(i));
            ratio[i] = s.preconcurrence / s.norm2;
            if (ratio[i] > ratio[hi]) hi = i;
            if (ratio[i] < ratio[lo]) lo = i;
        }
        if (ratio[hi] - target <= kRatioTolerance && target - ratio[lo] <= kRatioTolerance) {
            return;
        }
        Vec4 za = z.col(hi);
        Vec4 zb = z.col(lo);
        double a = preconcurrence(za).real() - target * za.squaredNorm();
        double d = preconcurrence(zb).real() - target * zb.squaredNorm();
        cplx t_ab = za.adjoint() * spin_flip(zb);
        cplx g_ab = za.adjoint() * zb;
        double b = t_ab.real() - target * g_ab.real();

        // Root of d t^2 + 2 b t + a = 0 with the smallest |t|.
        double disc = std::max(0.0, b * b - a * d);
        double q = -(b + std::copysign(std::sqrt(disc), b));
        double t = std::numeric_limits<double>::infinity();
        if (q != 0) {
            t = a / q;
        }
        if (d != 0 && std::abs(q / d) < std::abs(t)) {
            t = q / d;
        }
        if (!std::isfinite(t)) {
            break;
        }
        double c = 1 / std::sqrt(1 + t * t);
        double s = t * c;
        z.col(hi) = c * za + s * zb;
        z.col(lo) = -s * za + c * zb;
    }
    throw NotConverged("wootters_decompose: preconcurrence equalization did not converge within " +
                       std::to_string(kMaxEqualizationSteps) + " steps");
}

// Phases theta_j with sum_j lambda_j exp(i theta_j) = 0, given
// lambda_1 <= lambda_2 + lambda_3 + lambda_4 (up to rounding).
Eigen::Vector4d closing_phases(const Eigen::Vector4d &lam) {
    auto clamp_cos = [](double x) { return std::clamp(x, -1.0, 1.0); };
    double lo = std::max(std::abs(lam[2] - lam[3]), lam[0] - lam[1]);
    double hi = std::min(lam[2] + lam[3], lam[0] + lam[1]);
    double len = std::clamp(lo, 0.0, std::max(hi, 0.0));

    Eigen::Vector4d theta = Eigen::Vector4d::Zero();
    if (lam[0] > 0 && lam[1] > 0) {
        theta[1] = std::acos(clamp_cos((len * len - lam[0] * lam[0] - lam[1] * lam[1]) / (2 * lam[0] * lam[1])));
    }
    cplx w = lam[0] + lam[1] * std::polar(1.0, theta[1]);
    double frame = std::abs(w) > 0 ? std::arg(-w) : 0.0;
    if (len > 0 && lam[2] > 0) {
        double gamma = std::acos(clamp_cos((len * len + lam[2] * lam[2] - lam[3] * lam[3]) / (2 * len * lam[2])));
        cplx u3 = lam[2] * std::polar(1.0, gamma);
        cplx u4 = len - u3;
        theta[2] = frame + gamma;
        theta[3] = frame + (std::abs(u4) > 0 ? std::arg(u4) : 0.0);
    } else {
        // len == 0 forces lambda_3 == lambda_4; lambda_3 == 0 puts all of len on u4.
        theta[2] = frame;
        theta[3] = len > 0 ? frame : frame + std::numbers::pi;
    }
    return theta;
}

void separable_combination(Columns &z, const SmallVecD &lam_in) {
    const int n = static_cast<int>(z.cols());
    if (n == 2) {
        Vec4 y1 = z.col(0);
        Vec4 y2 = cplx(0, 1) * z.col(1);
        z.col(0) = (y1 + y2) / std::sqrt(2.0);
        z.col(1) = (y1 - y2) / std::sqrt(2.0);
        return;
    }
    Eigen::Vector4d lam = Eigen::Vector4d::Zero();
    Eigen::Matrix<cplx, 4, 4> x = Eigen::Matrix<cplx, 4, 4>::Zero();
    for (int j = 0; j < n; j++) {
        lam[j] = lam_in[j];
        x.col(j) = z.col(j);
    }
    Eigen::Vector4d theta = closing_phases(lam);
    static const double kHadamard[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
    z.resize(4, 4);
    for (int i = 0; i < 4; i++) {
        Vec4 acc = Vec4::Zero();
        for (int j = 0; j < 4; j++) {
            acc += 0.5 * kHadamard[i][j] * std::polar(1.0, theta[j] / 2) * x.col(j);
        }
        z.col(i) = acc;
    }
}

}  // namespace

const Mat4 &spin_flip_operator() {
    static const Mat4 yy = kron(pauli::y(), pauli::y());
    return yy;
}

Mat4 spin_flip(const DensityMatrix &rho) {
    const Mat4 &yy = spin_flip_operator();
    return yy * rho.matrix().conjugate() * yy;
}

Vec4 spin_flip(const Vec4 &psi) {
    return spin_flip_operator() * psi.conjugate();
}

cplx preconcurrence(const Vec4 &psi) {
    return psi.dot(spin_flip(psi));
}

Eigen::Vector4d concurrence_spectrum(const DensityMatrix &rho) {
    Mat4 root = psd_sqrt_cut(rho.matrix());
    const Mat4 &yy = spin_flip_operator();
    Mat4 root_flipped = yy * root.conjugate() * yy;
    Eigen::JacobiSVD<Mat4> svd(root * root_flipped);
    return svd.singularValues();
}

double concurrence(const DensityMatrix &rho) {
    Eigen::Vector4d l = concurrence_spectrum(rho);
    return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

double concurrence(const PureState &psi) {
    return std::min(1.0, std::abs(preconcurrence(psi.amplitudes())));
}

double eof_from_concurrence(double c) {
    if (!(c >= -1e-12 && c <= 1 + 1e-12)) {
        throw InvalidInput("eof_from_concurrence: concurrence must lie in [0, 1]");
    }
    c = std::clamp(c, 0.0, 1.0);
    double x = (1 + std::sqrt(1 - c * c)) / 2;
    auto term = [](double p) { return p > 0 ? -p * std::log2(p) : 0.0; };
    return term(x) + term(1 - x);
}

TakagiResult takagi(const SmallMat &tau) {
    const Eigen::Index n = tau.rows();
    if (n < 1 || n > 4 || tau.cols() != n) {
        throw InvalidInput("takagi: expected a square matrix of size 1..4");
    }
    double asym = (tau - tau.transpose()).cwiseAbs().maxCoeff();
    if (!(asym <= tol::kPhysical)) {
        std::ostringstream msg;
        msg << "takagi: input not symmetric (defect " << asym << ")";
        throw InvalidInput(msg.str());
    }
    SmallMat sym = (tau + tau.transpose()) * 0.5;

    // For the real symmetric embedding [[Re, Im], [Im, -Re]], an eigenvector
    // (x; y) with eigenvalue s >= 0 gives w = x + iy with tau * conj(w) = s w.
    Eigen::MatrixXd embed(2 * n, 2 * n);
    embed << sym.real(), sym.imag(), sym.imag(), -sym.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(embed);

    SmallMat w(n, n);
    Eigen::Index accepted = 0;
    for (Eigen::Index k = 2 * n - 1; k >= 0 && accepted < n; k--) {
        Eigen::VectorXd v = solver.eigenvectors().col(k);
        Eigen::VectorXcd cand(n);
        for (Eigen::Index i = 0; i < n; i++) {
            cand[i] = cplx(v[i], v[n + i]);
        }
        // Kernel vectors v and J v span the same complex line; keep one.
        for (int pass = 0; pass < 2; pass++) {
            for (Eigen::Index j = 0; j < accepted; j++) {
                cand -= w.col(j) * w.col(j).dot(cand);
            }
        }
        double norm = cand.norm();
        if (norm > 0.5) {
            w.col(accepted++) = cand / norm;
        }
    }
    if (accepted < n) {
        throw NotConverged("takagi: could not assemble a unitary basis");
    }

    SmallMat diag = w.adjoint() * sym * w.conjugate();
    std::vector<std::pair<double, Eigen::Index>> order;
    for (Eigen::Index k = 0; k < n; k++) {
        cplx d = diag(k, k);
        w.col(k) *= std::polar(1.0, std::arg(d) / 2);
        order.emplace_back(std::abs(d), k);
    }
    std::stable_sort(order.begin(), order.end(), [](auto &l, auto &r) { return l.first > r.first; });

    TakagiResult out;
    out.u.resize(n, n);
    out.lambdas.resize(n);
    for (Eigen::Index k = 0; k < n; k++) {
        out.u.row(k) = w.col(order[k].second).adjoint();
        out.lambdas[k] = order[k].first;
    }
    return out;
}

Mat4 Decomposition::mixture() const {
    Mat4 m = Mat4::Zero();
    for (const Branch &b : branches) {
        m += b.weight * b.state.projector();
    }
    return m;
}

namespace {

Columns subnormalized_eigenvectors(const DensityMatrix &rho) {
    HermitianEigen e = eig_hermitian(rho.matrix());
    int rank = 0;
    while (rank < 4 && e.values[rank] > tol::kRankCutoff) {
        rank++;
    }
    Columns v(4, rank);
    for (int k = 0; k < rank; k++) {
        v.col(k) = std::sqrt(e.values[k]) * e.vectors.col(k);
    }
    return v;
}

}  // namespace

SmallMat wootters_overlap(const DensityMatrix &rho) {
    Columns v = subnormalized_eigenvectors(rho);
    Columns flipped = spin_flip_operator() * v.conjugate();
    SmallMat tau = v.adjoint() * flipped;
    return (tau + tau.transpose()) * 0.5;
}

Decomposition wootters_decompose(const DensityMatrix &rho) {
    Columns v = subnormalized_eigenvectors(rho);
    const int rank = static_cast<int>(v.cols());
    if (rank == 0) {
        throw InvalidInput("wootters_decompose: density matrix has no eigenvalue above the rank cutoff");
    }

    Columns z = v;
    if (rank > 1) {
        SmallMat tau = v.adjoint() * (spin_flip_operator() * v.conjugate());
        tau = (tau + tau.transpose()) * 0.5;
        TakagiResult tk = takagi(tau);
        // x_i = sum_j conj(u_ij) v_j gives <x_i|x~_j> = lambda_i delta_ij.
        z = v * tk.u.adjoint();
        double c_raw = tk.lambdas[0] - (tk.lambdas.sum() - tk.lambdas[0]);
        if (c_raw > 0) {
            for (int j = 1; j < rank; j++) {
                z.col(j) *= cplx(0, 1);
            }
            equalize_ratios(z, c_raw);
        } else {
            separable_combination(z, tk.lambdas);
        }
    }

    Decomposition out;
    for (Eigen::Index k = 0; k < z.cols(); k++) {
        Vec4 col = z.col(k);
        double w = col.squaredNorm();
        fix_phase(col);
        out.branches.push_back({w, PureState::normalized(col)});
    }
    std::stable_sort(out.branches.begin(), out.branches.end(),
                     [](const Branch &a, const Branch &b) { return a.weight > b.weight; });
    return out;
}

}  // namespace polmix
