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

#ifndef POLMIX_TOMOGRAPHY_H
#define POLMIX_TOMOGRAPHY_H

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "polmix/linalg.h"

namespace polmix {

/// Polarization analysis bases. The first listed outcome is the +1
/// eigenvector of the matching Pauli operator: H (z), D (x), R (y), with
/// R = (H + iV)/sqrt(2).
enum class Basis { HV, DA, RL };

std::string to_string(Basis b);

struct MeasurementSetting {
    int id;  // 3 * basis_a + basis_b
    Basis basis_a;
    Basis basis_b;
    std::array<std::string, 4> outcome_labels;  // e.g. "HV" = A saw H, B saw V
    std::array<Mat4, 4> projectors;
};

/// The nine basis pairs, four outcomes each.
const std::vector<MeasurementSetting> &standard_settings();

struct CountRecord {
    int setting;
    std::array<uint64_t, 4> counts;
    uint64_t total;
    uint64_t seed;  // seed of the generator that drew this record
};

/// Outcome frequencies of one setting (counts / total, or exact Born
/// probabilities).
struct FrequencyRecord {
    int setting;
    std::array<double, 4> freq;
};

/// Multinomial draw of `shots` coincidences per setting. Each setting uses its
/// own generator seeded from (seed, setting id).
std::vector<CountRecord> simulate_counts(const DensityMatrix &rho, uint64_t shots, uint64_t seed);

std::vector<FrequencyRecord> exact_frequencies(const DensityMatrix &rho);

std::vector<FrequencyRecord> to_frequencies(const std::vector<CountRecord> &records);

/// Linear inversion from two-photon Pauli correlations, before positivity
/// restoration. Requires all nine settings.
Mat4 linear_inversion(const std::vector<FrequencyRecord> &records);

/// Clips negative eigenvalues to zero and renormalizes the trace.
DensityMatrix project_physical(const Mat4 &m);

DensityMatrix reconstruct(const std::vector<FrequencyRecord> &records);
DensityMatrix reconstruct(const std::vector<CountRecord> &records);

}  // namespace polmix

#endif
