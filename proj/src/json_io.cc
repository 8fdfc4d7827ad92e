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

#include <fstream>
#include <sstream>

namespace polmix::json_io {

namespace {

template <typename M>
json matrix_to_json(const M &m) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        json rr = json::array();
        json ri = json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            rr.push_back(m(r, c).real());
            ri.push_back(m(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ri);
    }
    return {{"re", re}, {"im", im}};
}

double number(const json &j, const char *what) {
    if (!j.is_number()) {
        throw InvalidInput(std::string("expected a number for ") + what);
    }
    return j.get<double>();
}

const json &field(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw InvalidInput(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

template <int N>
Eigen::Matrix<cplx, N, N> matrix_from_json(const json &j) {
    const json &re = field(j, "re");
    const json &im = field(j, "im");
    if (!re.is_array() || !im.is_array() || re.size() != N || im.size() != N) {
        throw InvalidInput("matrix must have " + std::to_string(N) + " rows in both \"re\" and \"im\"");
    }
    Eigen::Matrix<cplx, N, N> m;
    for (int r = 0; r < N; r++) {
        if (!re[r].is_array() || !im[r].is_array() || re[r].size() != N || im[r].size() != N) {
            throw InvalidInput("matrix row " + std::to_string(r) + " must have " + std::to_string(N) + " entries");
        }
        for (int c = 0; c < N; c++) {
            m(r, c) = cplx(number(re[r][c], "matrix entry"), number(im[r][c], "matrix entry"));
        }
    }
    return m;
}

std::array<double, 4> four_numbers(const json &j, const char *what) {
    if (!j.is_array() || j.size() != 4) {
        throw InvalidInput(std::string(what) + " must be an array of 4 numbers");
    }
    std::array<double, 4> out{};
    for (int i = 0; i < 4; i++) {
        out[i] = number(j[i], what);
    }
    return out;
}

int path_key(const std::string &key) {
    if (key.size() != 1 || key[0] < '1' || key[0] > '4') {
        throw InvalidInput("path key must be one of \"1\"..\"4\", got \"" + key + "\"");
    }
    return key[0] - '1';
}

json paths_report(const std::array<SchmidtForm, 4> &forms, const Weights &weights, size_t n) {
    json paths = json::array();
    for (size_t i = 0; i < n; i++) {
        paths.push_back({{"path", i + 1},
                         {"weight", weights[i]},
                         {"schmidt", to_json(forms[i])},
                         {"waveplates_a", to_json(waveplate_decompose(forms[i].u))},
                         {"waveplates_b", to_json(waveplate_decompose(forms[i].v))}});
    }
    return paths;
}

json check_report(const DesignCheck &check) {
    return {{"success", check.simulated_success},
            {"success_residual", check.success_residual},
            {"fidelity", check.fidelity},
            {"weight_residual", check.weight_residual}};
}

}  // namespace

json to_json(const Mat4 &m) {
    return matrix_to_json(m);
}

json to_json(const Mat2 &m) {
    return matrix_to_json(m);
}

json to_json(const PureState &psi) {
    json re = json::array();
    json im = json::array();
    for (int i = 0; i < 4; i++) {
        re.push_back(psi[i].real());
        im.push_back(psi[i].imag());
    }
    return {{"re", re}, {"im", im}};
}

json to_json(const DensityMatrix &rho) {
    return to_json(rho.matrix());
}

json to_json(const Decomposition &d) {
    json out = json::array();
    for (const Branch &b : d.branches) {
        out.push_back({{"p", b.weight}, {"state", to_json(b.state)}});
    }
    return out;
}

json to_json(const SchmidtForm &s) {
    return {{"theta", s.theta}, {"phase", s.phase}, {"u", to_json(s.u.matrix())}, {"v", to_json(s.v.matrix())}};
}

json to_json(const WaveplateTriple &w) {
    return {{"qwp1", w.qwp1}, {"hwp", w.hwp}, {"qwp2", w.qwp2}};
}

json to_json(const FilterSpec &f) {
    return {{"f_h", f.f_h}, {"f_v", f.f_v}, {"success_prob", f.success_prob}};
}

json to_json(const CircuitSpec &c) {
    json rotations = json::object();
    json filters = json::object();
    for (int i = 0; i < 4; i++) {
        std::string key = std::to_string(i + 1);
        rotations[key] = {{"u", to_json(c.rotations[i].u.matrix())}, {"v", to_json(c.rotations[i].v.matrix())}};
        if (c.filters[i]) {
            filters[key] = to_json(*c.filters[i]);
        }
    }
    return {{"etas", c.etas},
            {"theta0", c.theta0},
            {"coupler_efficiency", c.coupler_efficiency},
            {"sprs", rotations},
            {"filters", filters}};
}

json to_json(const Geometry &g) {
    return {{"lengths_a", g.lengths_a}, {"lengths_b", g.lengths_b}, {"l_coh", g.l_coh},
            {"l_pump", g.l_pump},       {"window_T", g.window_T},   {"kappa", g.kappa}};
}

json to_json(const std::vector<Violation> &violations) {
    json out = json::array();
    for (const Violation &v : violations) {
        out.push_back({{"code", to_string(v.code)},
                       {"arm", std::string(1, v.arm)},
                       {"paths", {v.path_i, v.path_j}},
                       {"margin", v.margin},
                       {"message", v.message}});
    }
    return out;
}

json to_json(const CountRecord &r) {
    return {{"setting", r.setting}, {"counts", r.counts}, {"total", r.total}, {"seed", r.seed}};
}

Mat4 mat4_from_json(const json &j) {
    return matrix_from_json<4>(j);
}

Mat2 mat2_from_json(const json &j) {
    return matrix_from_json<2>(j);
}

PureState pure_state_from_json(const json &j) {
    auto re = four_numbers(field(j, "re"), "state.re");
    auto im = four_numbers(field(j, "im"), "state.im");
    Vec4 v;
    for (int i = 0; i < 4; i++) {
        v[i] = cplx(re[i], im[i]);
    }
    return PureState::from_amplitudes(v);
}

DensityMatrix density_from_json(const json &j, double tolerance) {
    return DensityMatrix::from_matrix(mat4_from_json(j), tolerance);
}

Decomposition decomposition_from_json(const json &j) {
    if (!j.is_array() || j.empty() || j.size() > 4) {
        throw InvalidInput("decomposition must be an array of 1 to 4 branches");
    }
    Decomposition d;
    for (const json &b : j) {
        d.branches.push_back({number(field(b, "p"), "p"), pure_state_from_json(field(b, "state"))});
    }
    return d;
}

FilterSpec filter_from_json(const json &j) {
    FilterSpec f;
    f.f_h = number(field(j, "f_h"), "f_h");
    f.f_v = number(field(j, "f_v"), "f_v");
    f.success_prob = j.contains("success_prob") ? number(j.at("success_prob"), "success_prob") : 1.0;
    return f;
}

CircuitSpec circuit_from_json(const json &j) {
    CircuitSpec c;
    const json &etas = field(j, "etas");
    if (!etas.is_array() || etas.size() != 6) {
        throw InvalidInput("etas must be an array of 6 numbers");
    }
    for (int i = 0; i < 6; i++) {
        c.etas[i] = number(etas[i], "eta");
    }
    c.theta0 = number(field(j, "theta0"), "theta0");
    if (j.contains("coupler_efficiency")) {
        c.coupler_efficiency = number(j.at("coupler_efficiency"), "coupler_efficiency");
    }
    if (j.contains("sprs")) {
        for (const auto &[key, value] : j.at("sprs").items()) {
            int i = path_key(key);
            c.rotations[i].u = LocalUnitary::from_matrix(mat2_from_json(field(value, "u")), 1e-9);
            c.rotations[i].v = LocalUnitary::from_matrix(mat2_from_json(field(value, "v")), 1e-9);
        }
    }
    if (j.contains("filters")) {
        for (const auto &[key, value] : j.at("filters").items()) {
            c.filters[path_key(key)] = filter_from_json(value);
        }
    }
    c.validate();
    return c;
}

Geometry geometry_from_json(const json &j) {
    Geometry g;
    g.lengths_a = four_numbers(field(j, "lengths_a"), "lengths_a");
    g.lengths_b = four_numbers(field(j, "lengths_b"), "lengths_b");
    g.l_coh = number(field(j, "l_coh"), "l_coh");
    g.l_pump = number(field(j, "l_pump"), "l_pump");
    g.window_T = number(field(j, "window_T"), "window_T");
    if (j.contains("kappa")) {
        g.kappa = number(j.at("kappa"), "kappa");
    }
    g.validate();
    return g;
}

CountRecord count_record_from_json(const json &j) {
    CountRecord r{};
    try {
        r.setting = field(j, "setting").get<int>();
        const json &counts = field(j, "counts");
        if (!counts.is_array() || counts.size() != 4) {
            throw InvalidInput("counts must be an array of 4 integers");
        }
        for (int k = 0; k < 4; k++) {
            r.counts[k] = counts[k].get<uint64_t>();
        }
        r.total = field(j, "total").get<uint64_t>();
        r.seed = j.contains("seed") ? j.at("seed").get<uint64_t>() : 0;
    } catch (const json::exception &e) {
        throw InvalidInput(std::string("malformed count record: ") + e.what());
    }
    return r;
}

json design_report(const DensityMatrix &target, const GeneralDesign &design, const DesignCheck &check) {
    double c = concurrence(target);
    return {{"scheme", "general"},
            {"target", to_json(target)},
            {"concurrence", c},
            {"eof", eof_from_concurrence(c)},
            {"decomposition", to_json(design.decomposition)},
            {"theta", design.theta},
            {"case_id", design.optimum.case_id},
            {"etas", design.optimum.etas},
            {"f_optimal", design.optimum.f_optimal},
            {"paths", paths_report(design.branches, design.weights, design.decomposition.branches.size())},
            {"circuit", to_json(design.circuit)},
            {"geometry", to_json(Geometry{})},
            {"simulation", check_report(check)}};
}

json design_report(const TwoStateDesign &design) {
    std::array<SchmidtForm, 4> forms{design.psi, design.phi};
    Weights weights{design.p_target, 1 - design.p_target, 0, 0};
    json out = {{"scheme", "two-state"},
                {"alpha", design.alpha},
                {"beta", design.beta},
                {"p_target", design.p_target},
                {"k1", design.k1},
                {"k2", design.k2},
                {"chosen_initial", to_string(design.chosen_initial)},
                {"eta12", design.eta12},
                {"success", design.success},
                {"paths", paths_report(forms, weights, 2)},
                {"circuit", to_json(design.circuit)},
                {"geometry", to_json(Geometry{})},
                {"simulation", check_report(verify_two_state(design))}};
    if (design.p_target > 0 && design.p_target < 1 && design.k1 > 0) {
        out["threshold"] = choose_initial(design.k1, design.k2, design.p_target).threshold;
    }
    if (design.filter) {
        out["filter"] = to_json(*design.filter);
        out["filter_path"] = design.filter_path + 1;
    } else {
        out["filter"] = nullptr;
    }
    return out;
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

}  // namespace polmix::json_io
