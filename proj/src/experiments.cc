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

#include "xorsim/experiments.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "xorsim/engine.h"
#include "xorsim/errors.h"

namespace xorsim {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

EngineConfig reseeded(const EngineConfig &engine, uint64_t index) {
    EngineConfig e = engine;
    e.seed = engine.seed + index * 0x9E3779B97F4A7C15ull;
    return e;
}

VisibilityEstimate estimate(const std::vector<double> &x, const std::vector<double> &y, bool dip) {
    VisibilityEstimate v;
    v.fit = fit_gaussian_envelope(x, y, dip);
    v.visibility = v.fit.visibility();
    return v;
}

}  // namespace

ChannelEstimate measure_channel(
    const CircuitGraph &graph, const EngineConfig &engine, const std::vector<std::pair<std::string, int>> &required) {
    if (engine.kind == EngineKind::Exact) {
        return {run_exact(graph).marginal(required), 0, 0};
    }
    CountTable t = run_monte_carlo(graph, engine.trials, engine.seed, engine.workers);
    uint64_t n = t.marginal(required);
    return {static_cast<double>(n) / static_cast<double>(t.trials), n, t.trials};
}

std::string TruthTableReport::to_csv() const {
    std::string out = "input,expected,p_out0,p_out1,counts_out0,counts_out1,error\n";
    for (const auto &r : rows) {
        out += std::to_string(r.input[0]) + std::to_string(r.input[1]) + std::to_string(r.input[2]) + "," +
               std::to_string(r.expected) + "," + num(r.out0.probability) + "," + num(r.out1.probability) + "," +
               std::to_string(r.out0.counts) + "," + std::to_string(r.out1.counts) + "," + num(r.error) + "\n";
    }
    return out;
}

TruthTableReport truth_table_experiment(const Physics &physics, const EngineConfig &engine) {
    const std::vector<std::pair<std::string, int>> coincidence = {{"D1", 1}, {"D2", 1}, {"D3", 1}};
    TruthTableReport report;
    double wrong_total = 0;
    double all_total = 0;
    for (int bits = 0; bits < 8; bits++) {
        TruthTableRow row;
        row.input = {(bits >> 2) & 1, (bits >> 1) & 1, bits & 1};
        row.expected = row.input[0] ^ row.input[1] ^ row.input[2];
        auto prep = [](int b) { return QubitPrep{b ? 90.0 : 0.0}; };
        for (int out = 0; out < 2; out++) {
            ParitySettings settings;
            settings.theta3_deg = out ? 90 : 0;
            CircuitGraph g = build_parity_circuit(prep(row.input[0]), prep(row.input[1]), prep(row.input[2]), physics, settings);
            (out ? row.out1 : row.out0) = measure_channel(g, reseeded(engine, 2 * bits + out), coincidence);
        }
        const ChannelEstimate &right = row.expected ? row.out1 : row.out0;
        const ChannelEstimate &wrong = row.expected ? row.out0 : row.out1;
        double total = right.probability + wrong.probability;
        row.error = total > 0 ? wrong.probability / total : 0;
        wrong_total += wrong.probability;
        all_total += total;
        report.rows.push_back(row);
    }
    report.aggregate_error = all_total > 0 ? wrong_total / all_total : 0;
    return report;
}

std::vector<double> ScanRange::points() const {
    return ScanSpec{ScanKind::Delay, "", from, to, steps}.points();
}

std::vector<double> AngleRange::points() const {
    std::vector<double> out;
    if (!(step > 0)) {
        throw std::invalid_argument("angle step must be positive");
    }
    for (int k = 0;; k++) {
        double t = from + k * step;
        if (t >= to - 1e-12) {
            break;
        }
        out.push_back(t);
    }
    return out;
}

double DelayScan::zero_delay_error() const {
    const DelayScanPoint *best = nullptr;
    for (const auto &p : points) {
        if (!best || std::abs(p.delay) < std::abs(best->delay)) {
            best = &p;
        }
    }
    if (!best) {
        return 0;
    }
    double total = best->correct.probability + best->wrong.probability;
    return total > 0 ? best->wrong.probability / total : 0;
}

std::string DelayScan::to_csv() const {
    std::string out = "delay,p_correct,p_wrong,counts_correct,counts_wrong\n";
    for (const auto &p : points) {
        out += num(p.delay) + "," + num(p.correct.probability) + "," + num(p.wrong.probability) + "," +
               std::to_string(p.correct.counts) + "," + std::to_string(p.wrong.counts) + "\n";
    }
    return out;
}

namespace {

DelayScan finish_scan(DelayScan scan) {
    std::vector<double> x;
    std::vector<double> wrong;
    std::vector<double> correct;
    for (const auto &p : scan.points) {
        x.push_back(p.delay);
        wrong.push_back(p.wrong.probability);
        correct.push_back(p.correct.probability);
    }
    scan.dip = estimate(x, wrong, true);
    scan.peak = estimate(x, correct, false);
    return scan;
}

}  // namespace

DelayScan hom_scan_xor1(const ScanRange &range, const Physics &physics, const EngineConfig &engine) {
    DelayScan scan;
    uint64_t index = 0;
    for (double tau : range.points()) {
        CircuitGraph g = build_xor1_interrupted(QubitPrep{0}, QubitPrep{0}, physics, tau);
        DelayScanPoint p;
        p.delay = tau;
        if (engine.kind == EngineKind::Exact) {
            ResultTable t = run_exact(g);
            p.correct = {t.marginal({{"D1", 1}, {"D3", 1}, {"D2", 0}}), 0, 0};
            p.wrong = {t.marginal({{"D1", 1}, {"D2", 1}, {"D3", 0}}), 0, 0};
        } else {
            EngineConfig e = reseeded(engine, index);
            CountTable t = run_monte_carlo(g, e.trials, e.seed, e.workers);
            uint64_t c = t.marginal({{"D1", 1}, {"D3", 1}, {"D2", 0}});
            uint64_t w = t.marginal({{"D1", 1}, {"D2", 1}, {"D3", 0}});
            p.correct = {static_cast<double>(c) / t.trials, c, t.trials};
            p.wrong = {static_cast<double>(w) / t.trials, w, t.trials};
        }
        scan.points.push_back(p);
        index++;
    }
    return finish_scan(std::move(scan));
}

DelayScan hom_scan_full(const ScanRange &range, const Physics &physics, const EngineConfig &engine) {
    const std::vector<std::pair<std::string, int>> coincidence = {{"D1", 1}, {"D2", 1}, {"D3", 1}};
    DelayScan scan;
    uint64_t index = 0;
    for (double tau : range.points()) {
        DelayScanPoint p;
        p.delay = tau;
        for (int out = 0; out < 2; out++) {
            ParitySettings settings;
            settings.theta3_deg = out ? 90 : 0;
            settings.delay_q3 = tau;
            CircuitGraph g = build_parity_circuit(QubitPrep{0}, QubitPrep{0}, QubitPrep{90}, physics, settings);
            ChannelEstimate c = measure_channel(g, reseeded(engine, 2 * index + out), coincidence);
            (out ? p.correct : p.wrong) = c;
        }
        scan.points.push_back(p);
        index++;
    }
    return finish_scan(std::move(scan));
}

std::string AnalyzerScan::to_csv() const {
    std::string out = "theta3_deg,p_coincidence,counts,fit\n";
    for (const auto &p : points) {
        out += num(p.theta3_deg) + "," + num(p.coincidence.probability) + "," + std::to_string(p.coincidence.counts) + "," +
               num(fit(p.theta3_deg)) + "\n";
    }
    return out;
}

AnalyzerScan malus_scan(
    const std::array<QubitPrep, 3> &inputs, const AngleRange &range, const Physics &physics, const EngineConfig &engine) {
    const std::vector<std::pair<std::string, int>> coincidence = {{"D1", 1}, {"D2", 1}, {"D3", 1}};
    AnalyzerScan scan;
    std::vector<double> x;
    std::vector<double> y;
    uint64_t index = 0;
    for (double theta : range.points()) {
        ParitySettings settings;
        settings.theta3_deg = theta;
        CircuitGraph g = build_parity_circuit(inputs[0], inputs[1], inputs[2], physics, settings);
        ChannelEstimate c = measure_channel(g, reseeded(engine, index++), coincidence);
        scan.points.push_back({theta, c});
        x.push_back(theta);
        y.push_back(c.probability);
    }
    scan.fit = fit_cos_squared(x, y);
    return scan;
}

double max_feasible_kappa(double v12) {
    // [[1, v, k], [v, 1, k], [k, k, 1]] has determinant (1 - v)(1 + v - 2k^2).
    return std::min(1.0, std::sqrt((1 + v12) / 2));
}

double scan_visibility(OverlapParam which, const Physics &physics, const ScanRange &range) {
    DelayScan scan = which == OverlapParam::V12 ? hom_scan_xor1(range, physics) : hom_scan_full(range, physics);
    return scan.dip.visibility;
}

Calibration calibrate_overlap(
    double target, OverlapParam which, const Physics &base, const ScanRange &range, double tolerance, int max_iterations) {
    if (!(target > 0 && target <= 1)) {
        throw std::invalid_argument("target visibility must lie in (0, 1]");
    }
    auto visibility_at = [&](double value) {
        Physics p = base;
        (which == OverlapParam::V12 ? p.v12 : p.kappa) = value;
        return scan_visibility(which, p, range);
    };
    double upper = which == OverlapParam::Kappa ? max_feasible_kappa(base.v12) : 1.0;
    Calibration c;
    double v_hi = visibility_at(upper);
    c.iterations = 1;
    if (std::abs(v_hi - target) <= tolerance) {
        return {upper, v_hi, c.iterations};
    }
    double v_lo = visibility_at(0);
    c.iterations = 2;
    if (v_hi < target || v_lo > target) {
        throw NotBracketed("target visibility is not reachable on [0, 1]");
    }
    double lo = 0;
    double hi = upper;
    while (c.iterations < max_iterations) {
        double mid = 0.5 * (lo + hi);
        double v = visibility_at(mid);
        c.iterations++;
        c.value = mid;
        c.visibility = v;
        if (std::abs(v - target) <= tolerance) {
            return c;
        }
        (v < target ? lo : hi) = mid;
    }
    throw NumericError("calibration did not converge within the iteration limit");
}

}  // namespace xorsim
