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

#ifndef POLMIX_DESIGNER_H
#define POLMIX_DESIGNER_H

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "polmix/circuit.h"
#include "polmix/entanglement.h"
#include "polmix/local_structure.h"

namespace polmix {

using Etas = std::array<double, 6>;
using Weights = std::array<double, 4>;

/// Coincidence probabilities (p11, p22, p33, p44) of the six-splitter layout.
Weights path_probabilities(const Etas &etas);

struct GeneralOptimum {
    Etas etas{1, 1, 1, 1, 1, 1};
    double f_optimal = 1;
    int case_id = 3;
};

/// Closed-form optimal splitter settings for descending weights summing to 1.
/// A weight below 1e-12 counts as zero.
GeneralOptimum optimal_general(const Weights &weights);

/// Grid oracle for optimal_general. Scans photon A's three splitters on a
/// coarse grid refined down to `resolution`, with photon B's splitters
/// projected so the coincidence probabilities match `weights` exactly, and
/// returns the largest success probability found.
double brute_force_optimal(const Weights &weights, double resolution);

struct GeneralDesign {
    Decomposition decomposition;
    std::array<SchmidtForm, 4> branches{};  // Schmidt form per active path
    Weights weights{};
    GeneralOptimum optimum;
    double theta = 0;
    CircuitSpec circuit;
};

/// Equal-entanglement decomposition -> optimal splitters -> per-path rotations.
GeneralDesign design_general(const DensityMatrix &rho);

/// Same pipeline for an externally supplied decomposition. All branches must
/// share one Schmidt angle (within 1e-7).
GeneralDesign design_from_decomposition(const Decomposition &decomposition);

/// Closure check of a design: simulated output against the intended mixture.
struct DesignCheck {
    double simulated_success = 0;
    double success_residual = 0;  // |F_sim - F_predicted|
    double fidelity = 0;          // fidelity(simulated, intended)
    double weight_residual = 0;   // max |normalized p_ii - weight_i|
};

DesignCheck verify_design(const GeneralDesign &design);

// ---- Two-component scheme ----

enum class InitialState { phi_alpha, phi_beta };

std::string to_string(InitialState s);

struct FilterProbabilities {
    double k1;  // Phi(beta) -> Phi(alpha)
    double k2;  // Phi(alpha) -> Phi(beta)
};

/// k1 = sin^2(beta)/sin^2(alpha), k2 = cos^2(alpha)/cos^2(beta), with
/// alpha == beta giving (1, 1) and beta == 0 < alpha giving k1 = 0.
FilterProbabilities filter_probabilities(double alpha, double beta);

/// Success probability at a given eta1, eta2 fixed by the mixing-ratio
/// constraint. `k` is k1 for phi_beta and k2 for phi_alpha.
double success_at_eta1(double k, double A, double eta1, InitialState initial);

struct TwoStateOptimum {
    double eta12;
    double success;
};

/// Optimal symmetric splitters and success. A may be +infinity.
TwoStateOptimum optimal_two(double k1, double k2, double A, InitialState initial);

struct InitialChoice {
    InitialState initial;
    double threshold;
};

/// phi_beta iff p <= k1(1-sqrt k2)^2 / (k1(1-sqrt k2)^2 + k2(1-sqrt k1)^2).
InitialChoice choose_initial(double k1, double k2, double p);

struct FixedPoint {
    double eta1;
    double value;
};

/// Point where the unoptimized success no longer depends on A.
FixedPoint fixed_point(double k, InitialState which);

struct TwoStateDesign {
    double alpha = 0;
    double beta = 0;
    InitialState chosen_initial = InitialState::phi_alpha;
    double eta12 = 1;
    double k1 = 1;
    double k2 = 1;
    double p_target = 1;
    double success = 1;
    SchmidtForm psi;  // weight p, Schmidt angle alpha
    SchmidtForm phi;  // weight 1 - p, Schmidt angle beta
    std::optional<FilterSpec> filter;
    int filter_path = -1;  // 0-based, -1 when no filter is needed
    CircuitSpec circuit;
};

/// rho = p Phi(alpha) + (1-p) Phi(beta), both with identity local rotations.
TwoStateDesign design_two_state(double p, double alpha, double beta);

/// rho = p |psi><psi| + (1-p) |phi><phi|. The component with the larger
/// Schmidt angle takes the alpha role.
TwoStateDesign design_two_state(double p, const PureState &psi, const PureState &phi);

/// Simulated output of a two-component design against
/// p |psi><psi| + (1-p) |phi><phi|.
DesignCheck verify_two_state(const TwoStateDesign &design);

// ---- Sweeps ----

enum class SweepAxis { eta1, A, beta };

struct SweepParams {
    double k1 = 0.8;
    double k2 = 0.7;
    double A = 1;
    double alpha = 0.7;
};

struct Curve {
    std::string name;
    std::vector<double> values;
};

struct SweepTable {
    std::string axis;
    std::vector<double> grid;
    std::vector<Curve> curves;
    std::vector<std::pair<std::string, double>> metadata;

    void validate() const;
    /// Metadata as '#' comment lines, then a header row, then one row per
    /// grid point at 17 significant digits.
    std::string to_csv() const;
};

SweepTable sweep(SweepAxis axis, const SweepParams &params, const std::vector<double> &grid);

std::vector<double> linear_grid(double lo, double hi, int n);
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace polmix

#endif
