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

// polmix command-line tool.
//
// Exit codes: 0 success, 2 input error, 3 infeasible design, 4 geometry violation.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polmix/circuit.h"
#include "polmix/designer.h"
#include "polmix/entanglement.h"
#include "polmix/errors.h"
#include "polmix/json_io.h"
#include "polmix/tomography.h"

using namespace polmix;
using json_io::json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitGeometry = 4;

struct GeometryFailure {
    std::vector<Violation> violations;
};

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string fnv1a64(const std::string &data) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

double parse_angle(const std::string &text) {
    std::string s = text;
    bool degrees = false;
    if (s.size() > 3 && s.compare(s.size() - 3, 3, "deg") == 0) {
        degrees = true;
        s.resize(s.size() - 3);
    }
    size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        throw InvalidInput("cannot parse angle \"" + text + "\"");
    }
    if (used != s.size() || !std::isfinite(v)) {
        throw InvalidInput("cannot parse angle \"" + text + "\"");
    }
    return degrees ? v * M_PI / 180 : v;
}

class Run {
   public:
    std::string command;
    std::string out_path;
    std::string manifest_path;
    uint64_t seed = 1;
    double tol = tol::kPhysical;
    std::vector<std::string> args;

    void add_input(const std::string &path, const std::string &content) {
        inputs_.push_back({{"path", path}, {"fnv1a64", fnv1a64(content)}});
    }

    json read_input(const std::string &path) {
        std::string content = slurp(path);
        add_input(path, content);
        try {
            return json::parse(content);
        } catch (const json::exception &e) {
            throw InvalidInput(path + ": " + e.what());
        }
    }

    // Writes to the named file, or to stdout when path is empty.
    void emit(const std::string &path, const std::string &content) {
        if (path.empty()) {
            std::cout << content;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            throw InvalidInput("cannot write " + path);
        }
        f << content;
        outputs_.push_back(path);
    }

    void finish() {
        if (out_path.empty() && manifest_path.empty()) {
            return;
        }
        std::string path = manifest_path.empty() ? out_path + ".manifest.json" : manifest_path;
        json m = {{"command", command},
                  {"args", args},
                  {"inputs", inputs_},
                  {"seed", seed},
                  {"version", POLMIX_VERSION},
                  {"outputs", outputs_}};
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            throw InvalidInput("cannot write " + path);
        }
        f << m.dump(2) << "\n";
    }

   private:
    json inputs_ = json::array();
    std::vector<std::string> outputs_;
};

std::string dump(const json &j) {
    return j.dump(2) + "\n";
}

json decompose_summary(const DensityMatrix &rho, const Decomposition &dec) {
    double c = concurrence(rho);
    json branch_c = json::array();
    for (const Branch &b : dec.branches) {
        branch_c.push_back(concurrence(b.state));
    }
    return {{"decomposition", json_io::to_json(dec)},
            {"concurrence", c},
            {"eof", eof_from_concurrence(c)},
            {"branch_concurrences", branch_c},
            {"closure_error", frobenius(dec.mixture() - rho.matrix())}};
}

void cmd_decompose(Run &run, const std::string &input) {
    DensityMatrix rho = json_io::density_from_json(run.read_input(input), run.tol);
    run.emit(run.out_path, dump(decompose_summary(rho, wootters_decompose(rho))));
}

struct DesignFlags {
    std::string scheme = "general";
    std::string input;
    std::optional<double> p;
    std::optional<std::string> alpha;
    std::optional<std::string> beta;
};

void cmd_design(Run &run, const DesignFlags &flags) {
    if (flags.scheme == "general") {
        if (flags.input.empty()) {
            throw InvalidInput("design --scheme general needs an input density matrix or decomposition");
        }
        json in = run.read_input(flags.input);
        GeneralDesign d;
        DensityMatrix target = DensityMatrix::maximally_mixed();
        if (in.is_array()) {
            Decomposition dec = json_io::decomposition_from_json(in);
            target = DensityMatrix::from_matrix(hermitize(dec.mixture()), run.tol);
            d = design_from_decomposition(dec);
        } else {
            target = json_io::density_from_json(in, run.tol);
            d = design_general(target);
        }
        run.emit(run.out_path, dump(json_io::design_report(target, d, verify_design(d))));
        return;
    }
    if (flags.scheme != "two-state") {
        throw InvalidInput("unknown scheme \"" + flags.scheme + "\"");
    }
    if (!flags.p || !flags.alpha || !flags.beta) {
        throw InvalidInput("design --scheme two-state needs --p, --alpha and --beta");
    }
    TwoStateDesign d = design_two_state(*flags.p, parse_angle(*flags.alpha), parse_angle(*flags.beta));
    run.emit(run.out_path, dump(json_io::design_report(d)));
}

struct SimulateFlags {
    std::string input;
    std::string geometry;
    std::string target;
    bool skip_geometry = false;
};

void cmd_simulate(Run &run, const SimulateFlags &flags) {
    json in = run.read_input(flags.input);
    const bool is_report = in.is_object() && in.contains("circuit");
    CircuitSpec circuit = json_io::circuit_from_json(is_report ? in.at("circuit") : in);

    Geometry geometry;
    if (!flags.geometry.empty()) {
        geometry = json_io::geometry_from_json(run.read_input(flags.geometry));
    } else if (is_report && in.contains("geometry")) {
        geometry = json_io::geometry_from_json(in.at("geometry"));
    }
    std::optional<DensityMatrix> target;
    if (!flags.target.empty()) {
        target = json_io::density_from_json(run.read_input(flags.target), run.tol);
    } else if (is_report && in.contains("target")) {
        target = json_io::density_from_json(in.at("target"), tol::kReconstruction);
    }

    std::vector<Violation> violations = validate_geometry(geometry);
    json geo = {{"checked", !flags.skip_geometry},
                {"ok", violations.empty()},
                {"violations", json_io::to_json(violations)}};
    if (!violations.empty() && !flags.skip_geometry) {
        run.emit(run.out_path, dump({{"geometry", geo}}));
        throw GeometryFailure{violations};
    }

    PostSelected out = postselect_coincidence(evolve(circuit));
    json result = {{"rho", json_io::to_json(out.rho)}, {"success", out.success}, {"geometry", geo}};
    if (target) {
        result["fidelity"] = fidelity(out.rho, *target);
    }
    run.emit(run.out_path, dump(result));
}

struct SweepFlags {
    std::string axis;
    double k1 = 0.8;
    double k2 = 0.7;
    std::string alpha = "0.7";
    std::vector<double> a_list;
    std::optional<double> a;
    int grid_n = 500;
};

std::string label(const std::string &name, double a) {
    std::ostringstream out;
    out << name << "[A=" << std::setprecision(17) << a << "]";
    return out.str();
}

void cmd_sweep(Run &run, const SweepFlags &flags) {
    if (flags.grid_n < 2) {
        throw InvalidInput("--grid-n must be at least 2");
    }
    SweepParams params;
    params.k1 = flags.k1;
    params.k2 = flags.k2;
    params.alpha = parse_angle(flags.alpha);
    if (flags.axis == "A") {
        std::vector<double> grid = log_grid(1e-4, 1e4, flags.grid_n);
        run.emit(run.out_path, sweep(SweepAxis::A, params, grid).to_csv());
        return;
    }

    SweepAxis axis;
    std::vector<double> grid;
    std::vector<double> a_list;
    if (flags.axis == "eta1") {
        axis = SweepAxis::eta1;
        grid = linear_grid(0, 1, flags.grid_n);
        a_list = {1e-4, 1, 1e4};
    } else if (flags.axis == "beta") {
        axis = SweepAxis::beta;
        if (!(params.alpha > 0 && params.alpha <= M_PI / 4)) {
            throw InvalidInput("--alpha must lie in (0, pi/4]");
        }
        grid = linear_grid(0, params.alpha, flags.grid_n);
        a_list = {1e-3, 1e3};
    } else {
        throw InvalidInput("unknown axis \"" + flags.axis + "\" (expected eta1, A or beta)");
    }
    if (flags.a) {
        a_list = {*flags.a};
    } else if (!flags.a_list.empty()) {
        a_list = flags.a_list;
    }

    SweepTable merged;
    for (double a : a_list) {
        params.A = a;
        SweepTable t = sweep(axis, params, grid);
        if (merged.curves.empty()) {
            merged.axis = t.axis;
            merged.grid = t.grid;
            for (const auto &kv : t.metadata) {
                if (kv.first != "A") merged.metadata.push_back(kv);
            }
        }
        for (Curve &c : t.curves) {
            merged.curves.push_back({label(c.name, a), std::move(c.values)});
        }
    }
    merged.validate();
    run.emit(run.out_path, merged.to_csv());
}

struct TomoFlags {
    std::string input;
    int64_t shots = 0;
    std::string counts_out;
};

void cmd_tomo(Run &run, const TomoFlags &flags) {
    if (flags.shots < 0) {
        throw InvalidInput("--shots must be non-negative");
    }
    DensityMatrix rho = json_io::density_from_json(run.read_input(flags.input), run.tol);
    DensityMatrix rec = DensityMatrix::maximally_mixed();
    json result = {{"shots", flags.shots}};
    if (flags.shots == 0) {
        rec = reconstruct(exact_frequencies(rho));
    } else {
        std::vector<CountRecord> records = simulate_counts(rho, static_cast<uint64_t>(flags.shots), run.seed);
        rec = reconstruct(records);
        result["seed"] = run.seed;
        std::string counts_path = flags.counts_out;
        if (counts_path.empty() && !run.out_path.empty()) {
            counts_path = run.out_path + ".counts.jsonl";
        }
        if (!counts_path.empty()) {
            std::string lines;
            for (const CountRecord &r : records) {
                lines += json_io::to_json(r).dump() + "\n";
            }
            run.emit(counts_path, lines);
            result["counts"] = counts_path;
        }
    }
    result["reconstructed"] = json_io::to_json(rec);
    result["fidelity"] = fidelity(rec, rho);
    result["frobenius_error"] = frobenius(rec.matrix() - rho.matrix());
    run.emit(run.out_path, dump(result));
}

void cmd_validate_geometry(Run &run, const std::string &input) {
    Geometry g = json_io::geometry_from_json(run.read_input(input));
    std::vector<Violation> violations = validate_geometry(g);
    run.emit(run.out_path, dump({{"ok", violations.empty()}, {"violations", json_io::to_json(violations)}}));
    if (!violations.empty()) {
        throw GeometryFailure{violations};
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"polmix: mixed polarization-entangled state preparation toolkit"};
    app.set_version_flag("--version", std::string(POLMIX_VERSION));
    app.require_subcommand(1);
    app.fallthrough();

    Run run;
    app.add_option("--out", run.out_path, "Output file (default: stdout)");
    app.add_option("--manifest", run.manifest_path, "Run manifest path (default: <out>.manifest.json)");
    app.add_option("--seed", run.seed, "Random seed");
    app.add_option("--tol", run.tol, "Physicality tolerance for input density matrices")->check(CLI::PositiveNumber);

    std::string decompose_input;
    auto *decompose = app.add_subcommand("decompose", "Decompose rho into equal-concurrence pure states");
    decompose->add_option("input", decompose_input, "Density matrix JSON")->required();

    DesignFlags design_flags;
    auto *design = app.add_subcommand("design", "Design a preparation circuit");
    design->add_option("input", design_flags.input, "Density matrix or decomposition JSON");
    design->add_option("--scheme", design_flags.scheme)->check(CLI::IsMember({"general", "two-state"}));
    design->add_option("--p", design_flags.p, "Weight of the more entangled state");
    design->add_option("--alpha", design_flags.alpha, "Schmidt angle of the more entangled state (rad or deg)");
    design->add_option("--beta", design_flags.beta, "Schmidt angle of the less entangled state (rad or deg)");

    SimulateFlags simulate_flags;
    auto *simulate = app.add_subcommand("simulate", "Simulate a circuit and post-select coincidences");
    simulate->add_option("input", simulate_flags.input, "Circuit JSON or design report")->required();
    simulate->add_option("--geometry", simulate_flags.geometry, "Geometry JSON");
    simulate->add_option("--target", simulate_flags.target, "Target density matrix JSON");
    simulate->add_flag("--skip-geometry", simulate_flags.skip_geometry);

    SweepFlags sweep_flags;
    auto *sweep_cmd = app.add_subcommand("sweep", "Emit success-probability curves as CSV");
    sweep_cmd->add_option("--axis", sweep_flags.axis)->required();
    sweep_cmd->add_option("--k1", sweep_flags.k1)->check(CLI::Range(0.0, 1.0));
    sweep_cmd->add_option("--k2", sweep_flags.k2)->check(CLI::Range(0.0, 1.0));
    sweep_cmd->add_option("--alpha", sweep_flags.alpha);
    sweep_cmd->add_option("--A-list", sweep_flags.a_list)->delimiter(',');
    sweep_cmd->add_option("--A", sweep_flags.a);
    sweep_cmd->add_option("--grid-n", sweep_flags.grid_n);

    TomoFlags tomo_flags;
    auto *tomo = app.add_subcommand("tomo", "Simulate tomography and reconstruct rho");
    tomo->add_option("input", tomo_flags.input, "Density matrix JSON")->required();
    tomo->add_option("--shots", tomo_flags.shots, "Shots per setting (0 = exact frequencies)");
    tomo->add_option("--counts", tomo_flags.counts_out, "Counts JSONL path");

    std::string geometry_input;
    auto *validate = app.add_subcommand("validate-geometry", "Check path lengths and coincidence window");
    validate->add_option("input", geometry_input, "Geometry JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }
    for (int i = 1; i < argc; i++) {
        run.args.push_back(argv[i]);
    }

    try {
        if (*decompose) {
            run.command = "decompose";
            cmd_decompose(run, decompose_input);
        } else if (*design) {
            run.command = "design";
            cmd_design(run, design_flags);
        } else if (*simulate) {
            run.command = "simulate";
            cmd_simulate(run, simulate_flags);
        } else if (*sweep_cmd) {
            run.command = "sweep";
            cmd_sweep(run, sweep_flags);
        } else if (*tomo) {
            run.command = "tomo";
            cmd_tomo(run, tomo_flags);
        } else if (*validate) {
            run.command = "validate-geometry";
            cmd_validate_geometry(run, geometry_input);
        }
        run.finish();
    } catch (const GeometryFailure &g) {
        for (const Violation &v : g.violations) {
            std::cerr << "error: " << to_string(v.code) << ": " << v.message << "\n";
        }
        run.finish();
        return kExitGeometry;
    } catch (const InvalidInput &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Infeasible &e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
