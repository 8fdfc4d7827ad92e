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

#include "polmix/designer.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace polmix {

namespace {

constexpr double kZeroWeight = 1e-12;

void require_unit(double x, const char *what) {
    if (!(x >= 0 && x <= 1)) {
        throw InvalidInput(std::string(what) + " outside [0, 1]");
    }
}

// Optimal success of the two-component scheme, no argument checks.
double optimal_p(double k1, double A) {
    if (std::isinf(A)) return 1;
    double root = 1 + std::sqrt(A * k1);
    return k1 * (1 + A) / (root * root);
}

double optimal_p_prime(double k2, double A) {
    if (std::isinf(A)) return k2;
    double root = std::sqrt(k2) + std::sqrt(A);
    return k2 * (1 + A) / (root * root);
}

}  // namespace

Weights path_probabilities(const Etas &e) {
    for (double x : e) {
        require_unit(x, "path_probabilities: eta");
    }
    return {
        e[0] * e[1] * e[2] * e[4],
        e[0] * e[1] * (1 - e[2]) * (1 - e[4]),
        (1 - e[0]) * (1 - e[1]) * e[3] * e[5],
        (1 - e[0]) * (1 - e[1]) * (1 - e[3]) * (1 - e[5]),
    };
}

GeneralOptimum optimal_general(const Weights &weights) {
    for (size_t i = 0; i < 4; i++) {
        if (!(weights[i] >= 0)) {
            throw InvalidInput("optimal_general: weights must be non-negative");
        }
        if (i > 0 && weights[i] > weights[i - 1] + kZeroWeight) {
            throw InvalidInput("optimal_general: weights must be sorted descending");
        }
    }
    if (!(weights[0] >= kZeroWeight)) {
        throw InvalidInput("optimal_general: leading weight is zero");
    }
    std::array<double, 4> ratio{};
    for (size_t i = 0; i < 4; i++) {
        ratio[i] = weights[i] < kZeroWeight ? 0.0 : weights[i] / weights[0];
    }
    std::array<double, 4> root{};
    std::transform(ratio.begin(), ratio.end(), root.begin(), [](double a) { return std::sqrt(a); });
    double sum_ratio = std::accumulate(ratio.begin(), ratio.end(), 0.0);
    double sum_root = std::accumulate(root.begin(), root.end(), 0.0);

    GeneralOptimum out;
    if (ratio[1] == 0) {
        out.case_id = 3;
    } else if (ratio[2] == 0) {
        out.case_id = 2;
        double split = 1 / (1 + root[1]);
        out.etas = {1, 1, split, 1, split, 1};
        out.f_optimal = (1 + ratio[1]) / ((1 + root[1]) * (1 + root[1]));
    } else {
        out.case_id = 1;
        double first = (1 + root[1]) / sum_root;
        double upper = 1 / (1 + root[1]);
        double lower = root[2] / (root[2] + root[3]);
        out.etas = {first, first, upper, lower, upper, lower};
        out.f_optimal = sum_ratio / (sum_root * sum_root);
    }
    return out;
}

double brute_force_optimal(const Weights &weights, double resolution) {
    if (!(resolution > 0 && resolution <= 0.1)) {
        throw InvalidInput("brute_force_optimal: resolution must lie in (0, 0.1]");
    }
    double total = 0;
    for (double w : weights) {
        if (!(w >= 0)) throw InvalidInput("brute_force_optimal: negative weight");
        total += w;
    }
    if (std::abs(total - 1) > 1e-9) {
        throw InvalidInput("brute_force_optimal: weights must sum to 1");
    }

    // With photon A's path probabilities a fixed, the B arm can realise any
    // b in the simplex, and b_i proportional to w_i / a_i matches the weights
    // exactly. The success is then 1 / sum_i (w_i / a_i).
    auto success = [&](double e1, double e3, double e4) {
        const double a[4] = {e1 * e3, e1 * (1 - e3), (1 - e1) * e4, (1 - e1) * (1 - e4)};
        double s = 0;
        for (int i = 0; i < 4; i++) {
            if (weights[i] < kZeroWeight) continue;
            if (a[i] <= 0) return 0.0;
            s += weights[i] / a[i];
        }
        return 1 / s;
    };

    struct Point {
        double e[3];
    };
    Point best{{0.5, 0.5, 0.5}};
    double best_f = -1;
    auto scan = [&](const Point &center, double half_width, double step) {
        std::vector<double> axis[3];
        for (int d = 0; d < 3; d++) {
            double lo = std::max(0.0, center.e[d] - half_width);
            double hi = std::min(1.0, center.e[d] + half_width);
            for (double x = lo; x < hi - 1e-15; x += step) {
                axis[d].push_back(x);
            }
            axis[d].push_back(hi);
        }
        Point local = best;
        for (double e1 : axis[0]) {
            for (double e3 : axis[1]) {
                for (double e4 : axis[2]) {
                    double f = success(e1, e3, e4);
                    if (f > best_f) {
                        best_f = f;
                        local = {{e1, e3, e4}};
                    }
                }
            }
        }
        best = local;
    };

    double step = std::max(resolution, 0.05);
    scan({{0.5, 0.5, 0.5}}, 0.5, step);
    while (step > resolution) {
        double next = std::max(step / 4, resolution);
        scan(best, 2 * step, next);
        step = next;
    }
    if (!(best_f > 0)) {
        throw Infeasible("brute_force_optimal: no feasible grid point");
    }
    return best_f;
}

GeneralDesign design_from_decomposition(const Decomposition &decomposition) {
    const auto &branches = decomposition.branches;
    if (branches.empty() || branches.size() > 4) {
        throw InvalidInput("design: decomposition must have 1 to 4 branches");
    }
    double total = 0;
    for (const Branch &b : branches) {
        total += b.weight;
    }
    if (std::abs(total - 1) > tol::kReconstruction) {
        throw InvalidInput("design: decomposition weights must sum to 1");
    }

    GeneralDesign d;
    d.decomposition = decomposition;
    std::stable_sort(d.decomposition.branches.begin(), d.decomposition.branches.end(),
                     [](const Branch &a, const Branch &b) { return a.weight > b.weight; });

    double theta_lo = std::numeric_limits<double>::infinity();
    double theta_hi = -theta_lo;
    double theta_sum = 0;
    for (size_t i = 0; i < d.decomposition.branches.size(); i++) {
        const Branch &b = d.decomposition.branches[i];
        d.weights[i] = b.weight;
        d.branches[i] = schmidt_extract(b.state);
        theta_lo = std::min(theta_lo, d.branches[i].theta);
        theta_hi = std::max(theta_hi, d.branches[i].theta);
        theta_sum += d.branches[i].theta;
    }
    if (theta_hi - theta_lo > tol::kCrossCheck) {
        std::ostringstream msg;
        msg << "design: branches do not share a Schmidt angle (spread " << theta_hi - theta_lo << ")";
        throw InvalidInput(msg.str());
    }
    d.theta = theta_sum / static_cast<double>(d.decomposition.branches.size());
    d.optimum = optimal_general(d.weights);

    d.circuit.etas = d.optimum.etas;
    d.circuit.theta0 = d.theta;
    for (size_t i = 0; i < d.decomposition.branches.size(); i++) {
        d.circuit.rotations[i] = {d.branches[i].u, d.branches[i].v};
    }
    return d;
}

GeneralDesign design_general(const DensityMatrix &rho) {
    return design_from_decomposition(wootters_decompose(rho));
}

DesignCheck verify_design(const GeneralDesign &design) {
    JointState js = evolve(design.circuit);
    PostSelected out = postselect_coincidence(js);
    DensityMatrix intended = DensityMatrix::from_matrix(hermitize(design.decomposition.mixture()), 1e-9);

    DesignCheck check;
    check.simulated_success = out.success;
    check.success_residual = std::abs(out.success - design.optimum.f_optimal);
    check.fidelity = fidelity(out.rho, intended);
    for (int i = 0; i < 4; i++) {
        double normalized = js.weights[i][i] / out.success;
        check.weight_residual = std::max(check.weight_residual, std::abs(normalized - design.weights[i]));
    }
    return check;
}

std::string to_string(InitialState s) {
    return s == InitialState::phi_alpha ? "phi_alpha" : "phi_beta";
}

FilterProbabilities filter_probabilities(double alpha, double beta) {
    if (!(beta >= 0 && beta <= alpha && alpha <= std::numbers::pi / 4 + 1e-12)) {
        throw InvalidInput("filter_probabilities: need 0 <= beta <= alpha <= pi/4");
    }
    if (alpha == beta) {
        return {1, 1};
    }
    double s = std::sin(beta) / std::sin(alpha);
    double c = std::cos(alpha) / std::cos(beta);
    return {s * s, c * c};
}

double success_at_eta1(double k, double A, double eta1, InitialState initial) {
    require_unit(k, "success_at_eta1: k");
    require_unit(eta1, "success_at_eta1: eta1");
    if (!(A >= 0) || std::isinf(A)) {
        throw InvalidInput("success_at_eta1: A must be finite and non-negative");
    }
    double eta2;
    double num;
    double den;
    if (initial == InitialState::phi_beta) {
        // (1 - eta1)(1 - eta2) = A k eta1 eta2
        num = 1 - eta1;
        den = (1 - eta1) + A * k * eta1;
    } else {
        // k (1 - eta1)(1 - eta2) = A eta1 eta2
        num = k * (1 - eta1);
        den = k * (1 - eta1) + A * eta1;
    }
    eta2 = den > 0 ? num / den : 1.0;
    double both = eta1 * eta2;
    double neither = (1 - eta1) * (1 - eta2);
    return initial == InitialState::phi_beta ? k * both + neither : both + k * neither;
}

TwoStateOptimum optimal_two(double k1, double k2, double A, InitialState initial) {
    require_unit(k1, "optimal_two: k1");
    require_unit(k2, "optimal_two: k2");
    if (!(A >= 0)) {
        throw InvalidInput("optimal_two: A must be non-negative");
    }
    if (initial == InitialState::phi_beta) {
        if (!(k1 > 0)) throw InvalidInput("optimal_two: k1 must be positive for the phi_beta branch");
        double eta = std::isinf(A) ? 0.0 : 1 / (1 + std::sqrt(A * k1));
        return {eta, optimal_p(k1, A)};
    }
    if (!(k2 > 0)) throw InvalidInput("optimal_two: k2 must be positive for the phi_alpha branch");
    double eta = std::isinf(A) ? 0.0 : std::sqrt(k2) / (std::sqrt(k2) + std::sqrt(A));
    return {eta, optimal_p_prime(k2, A)};
}

InitialChoice choose_initial(double k1, double k2, double p) {
    if (!(k1 > 0 && k1 <= 1 && k2 > 0 && k2 <= 1)) {
        throw InvalidInput("choose_initial: k1, k2 must lie in (0, 1]");
    }
    require_unit(p, "choose_initial: p");
    double a = k1 * std::pow(1 - std::sqrt(k2), 2);
    double b = k2 * std::pow(1 - std::sqrt(k1), 2);
    double threshold = a + b > 0 ? a / (a + b) : 0.5;
    return {p <= threshold ? InitialState::phi_beta : InitialState::phi_alpha, threshold};
}

FixedPoint fixed_point(double k, InitialState which) {
    if (!(k > 0 && k <= 1)) {
        throw InvalidInput("fixed_point: k must lie in (0, 1]");
    }
    if (which == InitialState::phi_beta) {
        return {1 / (1 + k), k / (1 + k)};
    }
    return {k / (1 + k), k / (1 + k)};
}

namespace {

TwoStateDesign design_two_state_core(double p, const SchmidtForm &psi, const SchmidtForm &phi) {
    require_unit(p, "design_two_state: p");
    TwoStateDesign d;
    d.alpha = psi.theta;
    d.beta = phi.theta;
    d.p_target = p;
    d.psi = psi;
    d.phi = phi;
    FilterProbabilities fp = filter_probabilities(d.alpha, d.beta);
    d.k1 = fp.k1;
    d.k2 = fp.k2;

    CircuitSpec &c = d.circuit;
    c.etas = {1, 1, 1, 1, 1, 1};
    c.rotations[0] = {psi.u, psi.v};
    c.rotations[1] = {phi.u, phi.v};

    if (p == 1) {
        d.chosen_initial = InitialState::phi_alpha;
        d.eta12 = 1;
        d.success = 1;
        c.theta0 = d.alpha;
        return d;
    }
    if (p == 0) {
        d.chosen_initial = InitialState::phi_beta;
        d.eta12 = 0;
        d.success = 1;
        c.theta0 = d.beta;
        c.etas[2] = c.etas[4] = 0;
        return d;
    }

    double A = (1 - p) / p;
    d.chosen_initial = d.k1 > 0 ? choose_initial(d.k1, d.k2, p).initial : InitialState::phi_alpha;
    TwoStateOptimum opt = optimal_two(d.k1, d.k2, A, d.chosen_initial);
    d.eta12 = opt.eta12;
    d.success = opt.success;
    c.etas[2] = c.etas[4] = opt.eta12;

    bool needs_filter = d.alpha != d.beta;
    if (d.chosen_initial == InitialState::phi_beta) {
        c.theta0 = d.beta;
        if (needs_filter) {
            d.filter = design_filter(d.alpha, d.beta, FilterDirection::raise);
            d.filter_path = 0;
        }
    } else {
        c.theta0 = d.alpha;
        if (needs_filter) {
            d.filter = design_filter(d.alpha, d.beta, FilterDirection::lower);
            d.filter_path = 1;
        }
    }
    if (d.filter) {
        c.filters[d.filter_path] = d.filter;
    }
    return d;
}

}  // namespace

TwoStateDesign design_two_state(double p, double alpha, double beta) {
    if (!(beta >= 0 && beta <= alpha && alpha <= std::numbers::pi / 4 + 1e-12)) {
        throw InvalidInput("design_two_state: need 0 <= beta <= alpha <= pi/4");
    }
    SchmidtForm psi;
    psi.theta = alpha;
    SchmidtForm phi;
    phi.theta = beta;
    return design_two_state_core(p, psi, phi);
}

TwoStateDesign design_two_state(double p, const PureState &psi, const PureState &phi) {
    SchmidtForm a = schmidt_extract(psi);
    SchmidtForm b = schmidt_extract(phi);
    if (a.theta < b.theta) {
        return design_two_state_core(1 - p, b, a);
    }
    return design_two_state_core(p, a, b);
}

DesignCheck verify_two_state(const TwoStateDesign &design) {
    JointState js = evolve(design.circuit);
    PostSelected out = postselect_coincidence(js);
    Vec4 psi = design.psi.reconstruct();
    Vec4 phi = design.phi.reconstruct();
    Mat4 mix = design.p_target * psi * psi.adjoint() + (1 - design.p_target) * phi * phi.adjoint();
    DensityMatrix intended = DensityMatrix::from_matrix(hermitize(mix), 1e-9);

    DesignCheck check;
    check.simulated_success = out.success;
    check.success_residual = std::abs(out.success - design.success);
    check.fidelity = fidelity(out.rho, intended);
    // Path 1 carries psi, path 2 carries phi.
    double w0 = js.weights[0][0] / out.success;
    check.weight_residual = std::abs(w0 - design.p_target);
    return check;
}

void SweepTable::validate() const {
    if (grid.empty()) {
        throw InvalidInput("sweep: empty grid");
    }
    for (const Curve &c : curves) {
        if (c.values.size() != grid.size()) {
            throw InvalidInput("sweep: curve length differs from grid length");
        }
        for (double v : c.values) {
            if (!(v >= 0 && v <= 1 + 1e-12)) {
                throw InvalidInput("sweep: curve value outside [0, 1]");
            }
        }
    }
}

std::string SweepTable::to_csv() const {
    std::ostringstream out;
    out << std::setprecision(17);
    for (const auto &[key, value] : metadata) {
        out << "# " << key << "=" << value << "\n";
    }
    out << axis;
    for (const Curve &c : curves) {
        out << "," << c.name;
    }
    out << "\n";
    for (size_t i = 0; i < grid.size(); i++) {
        out << grid[i];
        for (const Curve &c : curves) {
            out << "," << c.values[i];
        }
        out << "\n";
    }
    return out.str();
}

SweepTable sweep(SweepAxis axis, const SweepParams &params, const std::vector<double> &grid) {
    if (grid.empty()) {
        throw InvalidInput("sweep: empty grid");
    }
    if (!std::is_sorted(grid.begin(), grid.end())) {
        throw InvalidInput("sweep: grid must be ascending");
    }
    SweepTable t;
    t.grid = grid;
    Curve p{"P", {}};
    Curve pp{"P_prime", {}};
    switch (axis) {
        case SweepAxis::eta1:
            t.axis = "eta1";
            t.metadata = {{"k1", params.k1}, {"k2", params.k2}, {"A", params.A}};
            for (double eta1 : grid) {
                p.values.push_back(success_at_eta1(params.k1, params.A, eta1, InitialState::phi_beta));
                pp.values.push_back(success_at_eta1(params.k2, params.A, eta1, InitialState::phi_alpha));
            }
            break;
        case SweepAxis::A:
            t.axis = "A";
            t.metadata = {{"k1", params.k1}, {"k2", params.k2}};
            for (double a : grid) {
                p.values.push_back(optimal_two(params.k1, params.k2, a, InitialState::phi_beta).success);
                pp.values.push_back(optimal_two(params.k1, params.k2, a, InitialState::phi_alpha).success);
            }
            break;
        case SweepAxis::beta:
            t.axis = "beta";
            t.metadata = {{"alpha", params.alpha}, {"A", params.A}};
            if (!(params.A >= 0)) {
                throw InvalidInput("sweep: A must be non-negative");
            }
            for (double beta : grid) {
                FilterProbabilities fp = filter_probabilities(params.alpha, beta);
                p.values.push_back(optimal_p(fp.k1, params.A));
                pp.values.push_back(optimal_p_prime(fp.k2, params.A));
            }
            break;
    }
    t.curves = {std::move(p), std::move(pp)};
    t.validate();
    return t;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
    if (n < 1 || !(lo <= hi)) {
        throw InvalidInput("linear_grid: need n >= 1 and lo <= hi");
    }
    std::vector<double> g(n);
    for (int i = 0; i < n; i++) {
        g[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    }
    if (n > 1) g.back() = hi;
    return g;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0)) {
        throw InvalidInput("log_grid: lower bound must be positive");
    }
    std::vector<double> g = linear_grid(std::log10(lo), std::log10(hi), n);
    for (double &x : g) {
        x = std::pow(10.0, x);
    }
    g.front() = lo;
    if (n > 1) g.back() = hi;
    return g;
}

}  // namespace polmix
