// Copyright 2026 The xorsim Authors
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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "xorsim/circuit_parser.h"
#include "xorsim/engine.h"
#include "xorsim/errors.h"
#include "xorsim/experiments.h"

using namespace xorsim;
using nlohmann::json;

namespace {

struct Options {
    Physics physics;
    std::string engine = "exact";
    uint64_t trials = 100000;
    uint64_t seed = 1;
    int workers = 1;
    std::string out;
    std::string json_path;
};

void add_engine_flags(CLI::App *cmd, Options &o) {
    cmd->add_option("--engine", o.engine, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
    cmd->add_option("--trials", o.trials, "Monte Carlo trials per run");
    cmd->add_option("--seed", o.seed, "Monte Carlo seed");
    cmd->add_option("--workers", o.workers, "Monte Carlo worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "CSV destination (default stdout)");
    cmd->add_option("--json", o.json_path, "JSON summary destination ('-' for stdout)");
}

void add_physics_flags(CLI::App *cmd, Options &o) {
    cmd->add_option("--v12", o.physics.v12, "overlap of the two down-converted photons")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--kappa", o.physics.kappa, "overlap with the laser photon")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--mu", o.physics.mean_photons, "mean photon number of the laser pulse (0 = ideal photon)");
    cmd->add_option("--pair-prob", o.physics.pair_prob, "down-conversion pair probability (0 = ideal photons)");
    cmd->add_option("--sigma", o.physics.sigma, "wavepacket width")->check(CLI::PositiveNumber);
    cmd->add_option("--birefringence", o.physics.birefringence_deg, "link fiber rotation in degrees");
}

EngineConfig engine_of(const Options &o) {
    EngineConfig e;
    e.kind = o.engine == "mc" ? EngineKind::MonteCarlo : EngineKind::Exact;
    e.trials = o.trials;
    e.seed = o.seed;
    e.workers = o.workers;
    return e;
}

void write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    f << text;
}

void emit(const Options &o, const std::string &csv, const json &summary) {
    write_text(o.out, csv);
    if (!o.json_path.empty()) {
        write_text(o.json_path, summary.dump(2) + "\n");
    }
}

json fit_json(const VisibilityEstimate &v) {
    return {
        {"visibility", v.visibility},
        {"baseline", v.fit.baseline},
        {"depth", v.fit.depth},
        {"width", v.fit.width},
        {"center", v.fit.center},
        {"residual_norm", v.fit.residual_norm},
        {"converged", v.fit.converged},
    };
}

/// CSV table for one graph; exact runs also report the total coincidence probability.
std::string table_csv(const CircuitGraph &graph, const Options &o, json &summary) {
    if (o.engine == "mc") {
        CountTable t = run_monte_carlo(graph, o.trials, o.seed, o.workers);
        summary["coincidences"] = t.coincidences();
        return t.to_csv();
    }
    ResultTable t = run_exact(graph);
    summary["coincidence_probability"] = t.coincidence_probability();
    return t.to_csv();
}

int cmd_run(const std::string &file, const Options &o) {
    CircuitGraph graph = parse_circuit_file(file);
    json summary = {{"file", file}, {"engine", o.engine}};
    if (o.engine == "mc") {
        summary["trials"] = o.trials;
        summary["seed"] = o.seed;
    }
    if (!graph.scan) {
        std::string csv = table_csv(graph, o, summary);
        emit(o, csv, summary);
        return 0;
    }
    const ScanSpec scan = *graph.scan;
    std::string csv;
    json points = json::array();
    for (double value : scan.points()) {
        json point = {{"value", value}};
        std::istringstream table(table_csv(with_scan_value(graph, scan, value), o, point));
        std::string line;
        std::getline(table, line);
        if (csv.empty()) {
            csv = "scan_value," + line + "\n";
        }
        while (std::getline(table, line)) {
            csv += format_number(value) + "," + line + "\n";
        }
        points.push_back(point);
    }
    summary["scan_points"] = points;
    emit(o, csv, summary);
    return 0;
}

int cmd_truth_table(const Options &o) {
    TruthTableReport r = truth_table_experiment(o.physics, engine_of(o));
    json rows = json::array();
    for (const auto &row : r.rows) {
        rows.push_back({{"input", row.input}, {"expected", row.expected}, {"error", row.error}});
    }
    emit(o, r.to_csv(), {{"aggregate_error", r.aggregate_error}, {"rows", rows}});
    return 0;
}

int cmd_scan_delay(const std::string &which, ScanRange range, bool from_set, bool to_set, const Options &o) {
    if (!from_set) {
        range.from = -4 * o.physics.sigma;
    }
    if (!to_set) {
        range.to = 4 * o.physics.sigma;
    }
    DelayScan s = which == "xor1" ? hom_scan_xor1(range, o.physics, engine_of(o)) : hom_scan_full(range, o.physics, engine_of(o));
    emit(o, s.to_csv(), {{"scan", which}, {"dip", fit_json(s.dip)}, {"peak", fit_json(s.peak)}, {"zero_delay_error", s.zero_delay_error()}});
    return 0;
}

std::array<QubitPrep, 3> parse_inputs(const std::string &text) {
    std::array<QubitPrep, 3> out;
    std::stringstream ss(text);
    std::string item;
    int k = 0;
    while (std::getline(ss, item, ',')) {
        if (k >= 3) {
            throw CLI::ValidationError("--input", "expects three comma-separated angles");
        }
        try {
            size_t used = 0;
            out[k].angle_deg = std::stod(item, &used);
            if (item.find_first_not_of(" \t", used) != std::string::npos) {
                throw std::invalid_argument(item);
            }
        } catch (const std::logic_error &) {
            throw CLI::ValidationError("--input", "'" + item + "' is not an angle");
        }
        k++;
    }
    if (k != 3) {
        throw CLI::ValidationError("--input", "expects three comma-separated angles");
    }
    return out;
}

int cmd_scan_analyzer(const std::string &input, double step, const Options &o) {
    AngleRange range;
    range.step = step;
    AnalyzerScan s = malus_scan(parse_inputs(input), range, o.physics, engine_of(o));
    emit(o, s.to_csv(),
         {{"peak_deg", s.fit.peak_deg}, {"amplitude", s.fit.amplitude}, {"offset", s.fit.offset}, {"residual_norm", s.fit.residual_norm}});
    return 0;
}

int cmd_calibrate(double target, const std::string &param, double tolerance, const Options &o) {
    OverlapParam which = param == "v12" ? OverlapParam::V12 : OverlapParam::Kappa;
    ScanRange range{-4 * o.physics.sigma, 4 * o.physics.sigma, 41};
    Calibration c = calibrate_overlap(target, which, o.physics, range, tolerance);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "param,value,visibility,iterations\n%s,%.12g,%.12g,%d\n", param.c_str(), c.value, c.visibility, c.iterations);
    emit(o, buf, {{"param", param}, {"value", c.value}, {"visibility", c.visibility}, {"iterations", c.iterations}});
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Linear-optics XOR gate and parity circuit simulator"};
    app.require_subcommand(1);
    Options o;

    std::string file;
    auto *run = app.add_subcommand("run", "Simulate a circuit file");
    run->add_option("file", file, "circuit (.qc)")->required();
    add_engine_flags(run, o);

    auto *tt = app.add_subcommand("truth-table", "All 8 basis inputs of the parity circuit");
    add_engine_flags(tt, o);
    add_physics_flags(tt, o);

    std::string which;
    ScanRange range;
    auto *sd = app.add_subcommand("scan-delay", "Coincidences vs photon delay");
    sd->add_option("which", which, "xor1 or full")->required()->check(CLI::IsMember({"xor1", "full"}));
    auto *from_opt = sd->add_option("--from", range.from, "first delay (default -4 sigma)");
    auto *to_opt = sd->add_option("--to", range.to, "last delay (default +4 sigma)");
    sd->add_option("--steps", range.steps, "number of delay points")->check(CLI::PositiveNumber);
    add_engine_flags(sd, o);
    add_physics_flags(sd, o);

    std::string input = "15,0,90";
    double step = 15;
    auto *sa = app.add_subcommand("scan-analyzer", "Coincidences vs output analyzer angle");
    sa->add_option("--input", input, "three preparation angles in degrees");
    sa->add_option("--step", step, "analyzer step in degrees")->check(CLI::PositiveNumber);
    add_engine_flags(sa, o);
    add_physics_flags(sa, o);

    double target = 1;
    double tolerance = 1e-3;
    std::string param = "v12";
    auto *cal = app.add_subcommand("calibrate", "Fit an overlap parameter to a target visibility");
    cal->add_option("--target", target, "visibility to match")->required();
    cal->add_option("--param", param, "v12 or kappa")->check(CLI::IsMember({"v12", "kappa"}));
    cal->add_option("--tolerance", tolerance, "visibility tolerance");
    cal->add_option("--out", o.out, "CSV destination (default stdout)");
    cal->add_option("--json", o.json_path, "JSON summary destination ('-' for stdout)");
    add_physics_flags(cal, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            return cmd_run(file, o);
        }
        if (tt->parsed()) {
            return cmd_truth_table(o);
        }
        if (sd->parsed()) {
            return cmd_scan_delay(which, range, from_opt->count() > 0, to_opt->count() > 0, o);
        }
        if (sa->parsed()) {
            return cmd_scan_analyzer(input, step, o);
        }
        return cmd_calibrate(target, param, tolerance, o);
    } catch (const CircuitError &e) {
        std::cerr << file << ":" << e.what() << "\n";
        return 2;
    } catch (const CLI::Error &e) {
        app.exit(e);
        return 2;
    } catch (const NumericError &e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
