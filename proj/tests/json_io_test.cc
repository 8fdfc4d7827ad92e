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

#include "polmix/json_io.h"

#include <gtest/gtest.h>

#include "polmix/designer.h"
#include "polmix/tomography.h"

using namespace polmix;
using json_io::json;

TEST(json_io, density_round_trip) {
    DensityMatrix rho = random_density(3, 5);
    json j = json_io::to_json(rho);
    json again = json::parse(j.dump());
    EXPECT_EQ(json_io::density_from_json(again).matrix(), rho.matrix());
}

TEST(json_io, density_rejects_bad_shapes) {
    json j = {{"re", {{1, 0}, {0, 0}}}, {"im", {{0, 0}, {0, 0}}}};
    EXPECT_THROW(json_io::density_from_json(j), InvalidInput);
    EXPECT_THROW(json_io::density_from_json(json::object()), InvalidInput);
    json t = json_io::to_json(Mat4(Mat4::Identity() * 0.9 / 4.0));
    EXPECT_THROW(json_io::density_from_json(t), InvalidInput);
}

TEST(json_io, decomposition_round_trip) {
    Decomposition d = wootters_decompose(random_density(4, 8));
    Decomposition back = json_io::decomposition_from_json(json::parse(json_io::to_json(d).dump()));
    ASSERT_EQ(back.branches.size(), d.branches.size());
    for (size_t i = 0; i < d.branches.size(); i++) {
        EXPECT_EQ(back.branches[i].weight, d.branches[i].weight);
        EXPECT_EQ(back.branches[i].state.amplitudes(), d.branches[i].state.amplitudes());
    }
}

TEST(json_io, circuit_round_trip) {
    TwoStateDesign d = design_two_state(0.4, 0.7, 0.3);
    CircuitSpec c = d.circuit;
    CircuitSpec back = json_io::circuit_from_json(json::parse(json_io::to_json(c).dump()));
    EXPECT_EQ(back.etas, c.etas);
    EXPECT_EQ(back.theta0, c.theta0);
    for (int i = 0; i < 4; i++) {
        EXPECT_EQ(back.rotations[i].u.matrix(), c.rotations[i].u.matrix());
        EXPECT_EQ(back.filters[i].has_value(), c.filters[i].has_value());
        if (c.filters[i]) EXPECT_EQ(back.filters[i]->f_v, c.filters[i]->f_v);
    }
}

TEST(json_io, circuit_rejects_bad_path_key) {
    json j = json_io::to_json(CircuitSpec{});
    j["filters"]["5"] = json_io::to_json(FilterSpec{});
    EXPECT_THROW(json_io::circuit_from_json(j), InvalidInput);
}

TEST(json_io, geometry_round_trip) {
    Geometry g;
    g.lengths_b[3] = 4.1;
    g.kappa = 12;
    Geometry back = json_io::geometry_from_json(json::parse(json_io::to_json(g).dump()));
    EXPECT_EQ(back.lengths_b, g.lengths_b);
    EXPECT_EQ(back.kappa, g.kappa);
    EXPECT_EQ(back.window_T, g.window_T);
}

TEST(json_io, count_record_round_trip) {
    auto records = simulate_counts(DensityMatrix::maximally_mixed(), 100, 3);
    CountRecord back = json_io::count_record_from_json(json::parse(json_io::to_json(records[4]).dump()));
    EXPECT_EQ(back.setting, records[4].setting);
    EXPECT_EQ(back.counts, records[4].counts);
    EXPECT_EQ(back.seed, records[4].seed);
    EXPECT_THROW(json_io::count_record_from_json(json{{"setting", 1}}), InvalidInput);
}

TEST(json_io, design_report_fields) {
    DensityMatrix rho = random_density(2, 9);
    GeneralDesign d = design_general(rho);
    json r = json_io::design_report(rho, d, verify_design(d));
    for (const char *key : {"target", "decomposition", "concurrence", "eof", "etas", "f_optimal", "case_id", "theta",
                            "paths", "circuit", "geometry", "simulation"}) {
        EXPECT_TRUE(r.contains(key)) << key;
    }
    EXPECT_EQ(r["paths"].size(), d.decomposition.branches.size());
    EXPECT_TRUE(r["paths"][0]["waveplates_a"].contains("hwp"));

    json t = json_io::design_report(design_two_state(0.4, 0.7, 0.3));
    EXPECT_TRUE(t.contains("chosen_initial"));
    EXPECT_TRUE(t.contains("threshold"));
    EXPECT_TRUE(t["filter"].is_object());
}
