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

// Runs the ten acceptance criteria and prints one PASS/FAIL line for each. Exits nonzero if any
// criterion fails.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "support.h"
#include "xorsim/circuit_parser.h"
#include "xorsim/engine.h"
#include "xorsim/experiments.h"

using namespace xorsim;
using namespace xorsim::testing;

namespace {

const std::string kRoot = XORSIM_SOURCE_DIR;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char *format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Physics two_photon_physics() {
    Physics p;
    p.v12 = std::sqrt(0.959);
    return p;
}

/// Filled by criterion 5, used by 6 and 9.
double calibrated_kappa = -1;

Verdict oracle_equivalence() {
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20011);
    double worst_fidelity = 1;
    double worst_dp = 0;
    for (int k = 0; k < 200; k++) {
        QubitState x = random_qubit(rng), y = random_qubit(rng);
        Amplitude a = x.zero * y.zero, b = x.zero * y.one, g = x.one * y.zero, d = x.one * y.one;
        GateRun run = run_gate_elements(two_qubit_input(a, b, g, d));
        worst_dp = std::max(worst_dp, std::abs(run.probability - xor_success_probability(a, b, g, d)));
        worst_fidelity = std::min(worst_fidelity, qubit_fidelity(run.output, xor_conditional_output(a, b, g, d)));
    }
    double t = seconds_since(start);
    return {worst_fidelity >= 1 - 1e-10 && worst_dp <= 1e-10 && t < 5,
            fmt("min fidelity 1-%.2e, max |dP| %.2e, %.2f s", 1 - worst_fidelity, worst_dp, t)};
}

Verdict vanishing_probability() {
    const double r = 1 / std::sqrt(2.0);
    GateRun run = run_gate_elements(two_qubit_input(r, 0, 0, -r));
    return {run.probability <= 1e-12, fmt("P = %.3e", run.probability)};
}

Verdict ideal_truth_table() {
    auto start = std::chrono::steady_clock::now();
    TruthTableReport r = truth_table_experiment(Physics{});
    double worst_error = 0;
    double worst_coincidence = 0;
    for (const auto &row : r.rows) {
        worst_error = std::max(worst_error, row.error);
        double total = row.out0.probability + row.out1.probability;
        worst_coincidence = std::max(worst_coincidence, std::abs(total - 1.0 / 16));
    }
    double t = seconds_since(start);
    return {worst_error <= 1e-10 && worst_coincidence <= 1e-10 && t < 5,
            fmt("max error %.2e, max |P - 1/16| %.2e, %.2f s", worst_error, worst_coincidence, t)};
}

Verdict two_photon_scan() {
    Physics p = two_photon_physics();
    DelayScan s = hom_scan_xor1({-4, 4, 41}, p);
    double v = s.dip.visibility;
    double err = s.zero_delay_error();
    double worst_ratio = 0;
    for (double tau : {-20.0, 20.0}) {
        ResultTable t = run_exact(build_xor1_interrupted(QubitPrep{0}, QubitPrep{0}, p, tau));
        double correct = t.marginal({{"D1", 1}, {"D3", 1}, {"D2", 0}});
        double wrong = t.marginal({{"D1", 1}, {"D2", 1}, {"D3", 0}});
        worst_ratio = std::max(worst_ratio, std::abs(correct / wrong - 1));
    }
    bool pass = std::abs(v - 0.959) <= 0.002 && std::abs(err - 0.0205) <= 0.003 && worst_ratio <= 1e-6;
    return {pass, fmt("V = %.5f, zero-delay error %.3f%%, far |ratio - 1| %.2e", v, 100 * err, worst_ratio)};
}

Verdict three_photon_calibration() {
    Calibration c = calibrate_overlap(0.611, OverlapParam::Kappa, two_photon_physics());
    calibrated_kappa = c.value;
    Physics p = two_photon_physics();
    p.kappa = c.value;
    double v3 = hom_scan_full({-4, 4, 41}, p).dip.visibility;
    return {std::abs(v3 - 0.611) <= 0.005 && c.iterations <= 40,
            fmt("kappa = %.5f, V3 = %.5f, %d iterations", c.value, v3, c.iterations)};
}

Verdict calibrated_truth_table() {
    if (calibrated_kappa < 0) {
        return {false, "criterion 5 did not produce a calibration"};
    }
    Physics p = two_photon_physics();
    p.kappa = calibrated_kappa;
    TruthTableReport r = truth_table_experiment(p);
    return {std::abs(r.aggregate_error - 0.195) <= 0.02, fmt("aggregate error %.3f%%", 100 * r.aggregate_error)};
}

Verdict malus_scans() {
    AnalyzerScan a = malus_scan({QubitPrep{15}, QubitPrep{0}, QubitPrep{90}}, {}, Physics{});
    AnalyzerScan b = malus_scan({QubitPrep{15}, QubitPrep{90}, QubitPrep{90}}, {}, Physics{});
    double worst = 0;
    for (const AnalyzerScan *s : {&a, &b}) {
        for (const auto &pt : s->points) {
            worst = std::max(worst, std::abs(s->fit(pt.theta3_deg) - pt.coincidence.probability));
        }
    }
    bool pass = std::abs(a.fit.peak_deg - 75) <= 0.1 && std::abs(b.fit.peak_deg - 15) <= 0.1 && worst <= 1e-10;
    return {pass, fmt("peaks %.4f and %.4f deg, max residual %.2e", a.fit.peak_deg, b.fit.peak_deg, worst)};
}

/// Direct enumeration of pair count x pulse count for the parity layout.
double enumerated_ratio(double p, double mu) {
    const double pairs[3] = {1 - p - p * p, p, p * p};
    double z = 1 + mu + mu * mu / 2;
    const double pulse[3] = {1 / z, mu / z, mu * mu / 2 / z};
    return (pairs[1] + pairs[2]) * pulse[2] / (pairs[1] * pulse[1]);
}

Verdict noise_model() {
    double mu = mean_photons_for_error_ratio(0.01, 0.01);
    double library = error_to_valid_ratio(0.01, mu);
    double oracle = enumerated_ratio(0.01, mu);
    bool pass = std::abs(mu - 0.02) <= 0.2 * 0.02 && std::abs(oracle - 0.01) <= 1e-6 && std::abs(library - oracle) <= 1e-12;
    return {pass, fmt("mu = %.5f, ratio %.6f (enumeration %.6f)", mu, library, oracle)};
}

Verdict monte_carlo_fidelity() {
    Physics p = two_photon_physics();
    p.kappa = calibrated_kappa >= 0 ? calibrated_kappa : 0.8;
    const uint64_t trials = 100000;
    double worst_sigma = 0;
    bool identical = true;
    for (int bits = 0; bits < 8; bits++) {
        int x = bits >> 2 & 1, y = bits >> 1 & 1, z = bits & 1;
        double exact[2];
        uint64_t counts[2];
        for (int out = 0; out < 2; out++) {
            ParitySettings s;
            s.theta3_deg = out ? 90 : 0;
            CircuitGraph g = build_parity_circuit(QubitPrep{90.0 * x}, QubitPrep{90.0 * y}, QubitPrep{90.0 * z}, p, s);
            ResultTable t = run_exact(g);
            CountTable c = run_monte_carlo(g, trials, 1000 + bits * 2 + out, 4);
            identical = identical && c == run_monte_carlo(g, trials, 1000 + bits * 2 + out, 4);
            for (const auto &row : t.rows) {
                double f = static_cast<double>(c.counts(row.pattern)) / trials;
                double sd = std::sqrt(row.probability * (1 - row.probability) / trials);
                if (sd > 0) {
                    worst_sigma = std::max(worst_sigma, std::abs(f - row.probability) / sd);
                }
            }
            exact[out] = t.coincidence_probability();
            counts[out] = c.coincidences();
        }
        // Output distribution conditioned on a coincidence.
        double q = exact[1] / (exact[0] + exact[1]);
        double n = static_cast<double>(counts[0] + counts[1]);
        double sd = std::sqrt(q * (1 - q) / n);
        worst_sigma = std::max(worst_sigma, std::abs(counts[1] / n - q) / sd);
    }
    return {worst_sigma <= 4 && identical, fmt("max deviation %.2f sigma, reruns %s", worst_sigma, identical ? "identical" : "differ")};
}

Verdict parser() {
    CircuitGraph g = parse_circuit_file(kRoot + "/circuits/parity.qc");
    bool topology = g.count<PbsStage>() == 2 && g.count<AnalyzerStage>() == 3 && g.count<DetectorStage>() == 3;
    bool round_trip = parse_circuit(serialize_circuit(g)) == g;
    std::ifstream expected(kRoot + "/tests/data/malformed/expected.txt");
    std::string line;
    int files = 0;
    int matched = 0;
    while (std::getline(expected, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream in(line);
        std::string file, kind;
        int at = 0;
        in >> file >> kind >> at;
        files++;
        try {
            parse_circuit_file(kRoot + "/tests/data/malformed/" + file);
        } catch (const CircuitError &e) {
            matched += circuit_error_kind_name(e.kind) == kind && e.line == at;
        }
    }
    return {topology && round_trip && files == 10 && matched == 10,
            fmt("topology %s, round trip %s, malformed %d/%d", topology ? "ok" : "wrong", round_trip ? "ok" : "differs", matched, files)};
}

}  // namespace

int main() {
    const std::pair<const char *, std::function<Verdict()>> criteria[] = {
        {"oracle equivalence", oracle_equivalence},
        {"vanishing success probability", vanishing_probability},
        {"ideal truth table", ideal_truth_table},
        {"two-photon delay scan", two_photon_scan},
        {"three-photon visibility calibration", three_photon_calibration},
        {"calibrated truth-table error", calibrated_truth_table},
        {"analyzer scans", malus_scans},
        {"weak-pulse noise ratio", noise_model},
        {"Monte Carlo agreement and determinism", monte_carlo_fidelity},
        {"circuit parser", parser},
    };
    int failures = 0;
    int index = 1;
    for (const auto &[name, run] : criteria) {
        Verdict v;
        try {
            v = run();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %2d %s: %s (%s)\n", index++, v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
        std::fflush(stdout);
        failures += !v.pass;
    }
    return failures == 0 ? 0 : 1;
}
