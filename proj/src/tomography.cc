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

#include "polmix/tomography.h"

#include <algorithm>
#include <cmath>

namespace polmix {

namespace {

constexpr Basis kBases[3] = {Basis::HV, Basis::DA, Basis::RL};

// Eigenvectors (+1 first) of the basis' Pauli operator.
std::array<Vec2, 2> basis_states(Basis b) {
    const double h = 1 / std::sqrt(2.0);
    switch (b) {
        case Basis::HV:
            return {Vec2(1, 0), Vec2(0, 1)};
        case Basis::DA:
            return {Vec2(h, h), Vec2(h, -h)};
        case Basis::RL:
            return {Vec2(h, cplx(0, h)), Vec2(h, cplx(0, -h))};
    }
    return {};
}

const Mat2 &pauli_for(Basis b) {
    static const Mat2 x = pauli::x();
    static const Mat2 y = pauli::y();
    static const Mat2 z = pauli::z();
    switch (b) {
        case Basis::HV:
            return z;
        case Basis::DA:
            return x;
        case Basis::RL:
            return y;
    }
    return z;
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

std::string to_string(Basis b) {
    switch (b) {
        case Basis::HV:
            return "HV";
        case Basis::DA:
            return "DA";
        case Basis::RL:
            return "RL";
    }
    return "?";
}

const std::vector<MeasurementSetting> &standard_settings() {
    static const std::vector<MeasurementSetting> settings = [] {
        std::vector<MeasurementSetting> out;
        for (int a = 0; a < 3; a++) {
            for (int b = 0; b < 3; b++) {
                MeasurementSetting s;
                s.id = 3 * a + b;
                s.basis_a = kBases[a];
                s.basis_b = kBases[b];
                auto sa = basis_states(s.basis_a);
                auto sb = basis_states(s.basis_b);
                std::string la = to_string(s.basis_a);
                std::string lb = to_string(s.basis_b);
                for (int oa = 0; oa < 2; oa++) {
                    for (int ob = 0; ob < 2; ob++) {
                        int k = 2 * oa + ob;
                        Vec4 v;
                        v << sa[oa][0] * sb[ob][0], sa[oa][0] * sb[ob][1], sa[oa][1] * sb[ob][0],
                            sa[oa][1] * sb[ob][1];
                        s.projectors[k] = v * v.adjoint();
                        s.outcome_labels[k] = std::string{la[oa], lb[ob]};
                    }
                }
                out.push_back(std::move(s));
            }
        }
        return out;
    }();
    return settings;
}

std::vector<FrequencyRecord> exact_frequencies(const DensityMatrix &rho) {
    std::vector<FrequencyRecord> out;
    for (const MeasurementSetting &s : standard_settings()) {
        FrequencyRecord r{s.id, {}};
        for (int k = 0; k < 4; k++) {
            r.freq[k] = std::max(0.0, (rho.matrix() * s.projectors[k]).trace().real());
        }
        out.push_back(r);
    }
    return out;
}

std::vector<CountRecord> simulate_counts(const DensityMatrix &rho, uint64_t shots, uint64_t seed) {
    std::vector<CountRecord> out;
    for (const FrequencyRecord &f : exact_frequencies(rho)) {
        uint64_t setting_seed = splitmix64(seed ^ splitmix64(static_cast<uint64_t>(f.setting) + 1));
        std::mt19937_64 rng(setting_seed);
        CountRecord rec{f.setting, {}, shots, setting_seed};
        // Conditional binomials: outcome k takes its share of what is left.
        uint64_t remaining = shots;
        double mass = f.freq[0] + f.freq[1] + f.freq[2] + f.freq[3];
        for (int k = 0; k < 3; k++) {
            double p = mass > 0 ? std::clamp(f.freq[k] / mass, 0.0, 1.0) : 0.0;
            std::binomial_distribution<uint64_t> draw(remaining, p);
            uint64_t n = remaining > 0 ? draw(rng) : 0;
            rec.counts[k] = n;
            remaining -= n;
            mass -= f.freq[k];
        }
        rec.counts[3] = remaining;
        out.push_back(rec);
    }
    return out;
}

std::vector<FrequencyRecord> to_frequencies(const std::vector<CountRecord> &records) {
    std::vector<FrequencyRecord> out;
    for (const CountRecord &r : records) {
        uint64_t sum = r.counts[0] + r.counts[1] + r.counts[2] + r.counts[3];
        if (sum != r.total) {
            throw InvalidInput("count record " + std::to_string(r.setting) + ": counts do not sum to total");
        }
        if (r.total == 0) {
            throw InvalidInput("count record " + std::to_string(r.setting) + ": zero total");
        }
        FrequencyRecord f{r.setting, {}};
        for (int k = 0; k < 4; k++) {
            f.freq[k] = static_cast<double>(r.counts[k]) / static_cast<double>(r.total);
        }
        out.push_back(f);
    }
    return out;
}

Mat4 linear_inversion(const std::vector<FrequencyRecord> &records) {
    std::array<const FrequencyRecord *, 9> by_id{};
    for (const FrequencyRecord &r : records) {
        if (r.setting < 0 || r.setting >= 9) {
            throw InvalidInput("reconstruct: setting id out of range");
        }
        by_id[r.setting] = &r;
    }
    for (int i = 0; i < 9; i++) {
        if (by_id[i] == nullptr) {
            throw InvalidInput("reconstruct: missing setting " + std::to_string(i));
        }
    }

    static const double kSign[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    // Correlations indexed by basis: [a][b] for sigma_a x sigma_b, plus the
    // single-photon expectations averaged over the partner's three bases.
    double corr[3][3] = {};
    double single_a[3] = {};
    double single_b[3] = {};
    for (int a = 0; a < 3; a++) {
        for (int b = 0; b < 3; b++) {
            const auto &f = by_id[3 * a + b]->freq;
            double norm = f[0] + f[1] + f[2] + f[3];
            if (!(norm > 0)) {
                throw InvalidInput("reconstruct: all-zero frequencies in setting " + std::to_string(3 * a + b));
            }
            for (int k = 0; k < 4; k++) {
                double p = f[k] / norm;
                corr[a][b] += kSign[k][0] * kSign[k][1] * p;
                single_a[a] += kSign[k][0] * p / 3;
                single_b[b] += kSign[k][1] * p / 3;
            }
        }
    }

    const Mat2 id = Mat2::Identity();
    Mat4 rho = kron(id, id);
    for (int a = 0; a < 3; a++) {
        const Mat2 &sa = pauli_for(kBases[a]);
        rho += single_a[a] * kron(sa, id);
        rho += single_b[a] * kron(id, sa);
        for (int b = 0; b < 3; b++) {
            rho += corr[a][b] * kron(sa, pauli_for(kBases[b]));
        }
    }
    return rho / 4.0;
}

DensityMatrix project_physical(const Mat4 &m) {
    HermitianEigen e = eig_hermitian(hermitize(m));
    Eigen::Vector4d clipped = e.values.cwiseMax(0.0);
    double total = clipped.sum();
    if (!(total > 0)) {
        throw InvalidInput("project_physical: no positive eigenvalues");
    }
    Mat4 out = e.vectors * (clipped / total).cast<cplx>().asDiagonal() * e.vectors.adjoint();
    return DensityMatrix::from_matrix(hermitize(out));
}

DensityMatrix reconstruct(const std::vector<FrequencyRecord> &records) {
    return project_physical(linear_inversion(records));
}

DensityMatrix reconstruct(const std::vector<CountRecord> &records) {
    return reconstruct(to_frequencies(records));
}

}  // namespace polmix
