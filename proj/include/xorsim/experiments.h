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

#ifndef XORSIM_EXPERIMENTS_H
#define XORSIM_EXPERIMENTS_H

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "xorsim/fit.h"
#include "xorsim/xor_gate.h"

namespace xorsim {

enum class EngineKind {
    Exact,
    MonteCarlo,
};

struct EngineConfig {
    EngineKind kind = EngineKind::Exact;
    uint64_t trials = 100000;
    uint64_t seed = 1;
    int workers = 1;
};

/// Probability of a detector-outcome conjunction; for Monte Carlo, counts / trials.
struct ChannelEstimate {
    double probability = 0;
    uint64_t counts = 0;
    uint64_t trials = 0;
};

ChannelEstimate measure_channel(
    const CircuitGraph &graph, const EngineConfig &engine, const std::vector<std::pair<std::string, int>> &required);

struct TruthTableRow {
    std::array<int, 3> input{};
    int expected = 0;
    /// Three-fold coincidence with theta3 at |0> and at |1>.
    ChannelEstimate out0;
    ChannelEstimate out1;
    /// Wrong-output fraction among the row's coincidences.
    double error = 0;
};

struct TruthTableReport {
    std::vector<TruthTableRow> rows;
    /// Wrong coincidences over all coincidences, summed across rows.
    double aggregate_error = 0;

    std::string to_csv() const;
};

/// Runs the parity circuit for all 8 basis inputs at zero delay.
TruthTableReport truth_table_experiment(const Physics &physics, const EngineConfig &engine = {});

struct ScanRange {
    double from = -4;
    double to = 4;
    int steps = 41;

    std::vector<double> points() const;
};

/// Gaussian-envelope fit of a suppressed channel; visibility = depth / baseline.
struct VisibilityEstimate {
    double visibility = 0;
    GaussianEnvelopeFit fit;
};

struct DelayScanPoint {
    double delay = 0;
    ChannelEstimate correct;
    ChannelEstimate wrong;
};

struct DelayScan {
    std::vector<DelayScanPoint> points;
    /// Fit of the wrong (suppressed) channel.
    VisibilityEstimate dip;
    /// Fit of the correct (enhanced) channel.
    VisibilityEstimate peak;

    /// wrong / (correct + wrong) at the point nearest zero delay.
    double zero_delay_error() const;
    std::string to_csv() const;
};

/// First gate interrupted: input |0,0>, photon-1 delay scanned, correct = D1 & D3, wrong = D1 & D2.
DelayScan hom_scan_xor1(const ScanRange &range, const Physics &physics, const EngineConfig &engine = {});

/// Full circuit: input |0,0,1>, photon-3 delay scanned, correct = theta3 at |1>, wrong = at |0>.
DelayScan hom_scan_full(const ScanRange &range, const Physics &physics, const EngineConfig &engine = {});

struct AnalyzerScanPoint {
    double theta3_deg = 0;
    ChannelEstimate coincidence;
};

struct AnalyzerScan {
    std::vector<AnalyzerScanPoint> points;
    CosineSquaredFit fit;

    std::string to_csv() const;
};

struct AngleRange {
    double from = 0;
    double step = 15;
    /// Exclusive.
    double to = 180;

    std::vector<double> points() const;
};

/// Three-fold coincidence vs the output analyzer angle, fitted to A cos^2(theta3 - peak) + B.
AnalyzerScan malus_scan(
    const std::array<QubitPrep, 3> &inputs, const AngleRange &range, const Physics &physics, const EngineConfig &engine = {});

enum class OverlapParam {
    V12,
    Kappa,
};

struct Calibration {
    double value = 0;
    double visibility = 0;
    int iterations = 0;
};

/// Largest kappa that keeps the three-family overlap matrix positive semidefinite at equal arrival times.
double max_feasible_kappa(double v12);

/// Bisection of v12 (two-photon scan) or kappa (three-photon scan) on [0, 1] (kappa on [0, max_feasible_kappa]) until the fitted
/// visibility is within `tolerance` of `target`. Other parameters come from `base`. Throws
/// NotBracketed when the target is outside the visibilities at 0 and 1.
Calibration calibrate_overlap(
    double target,
    OverlapParam which,
    const Physics &base,
    const ScanRange &range = {},
    double tolerance = 1e-3,
    int max_iterations = 40);

/// Fitted visibility for the scan that `which` controls.
double scan_visibility(OverlapParam which, const Physics &physics, const ScanRange &range = {});

}  // namespace xorsim

#endif
