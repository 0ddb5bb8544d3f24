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

#include <gtest/gtest.h>

#include <cmath>

#include "xorsim/errors.h"
#include "xorsim/experiments.h"

using namespace xorsim;

TEST(experiments, ideal_truth_table_is_exact) {
    TruthTableReport r = truth_table_experiment(Physics{});
    ASSERT_EQ(r.rows.size(), 8u);
    for (const auto &row : r.rows) {
        EXPECT_LE(row.error, 1e-12);
        EXPECT_EQ(row.expected, row.input[0] ^ row.input[1] ^ row.input[2]);
    }
    EXPECT_LE(r.aggregate_error, 1e-12);
    EXPECT_EQ(r.to_csv().substr(0, 6), "input,");
}

TEST(experiments, xor1_visibility_is_overlap_squared) {
    for (double v : {0.5, 0.8, 0.95}) {
        Physics p;
        p.v12 = v;
        DelayScan s = hom_scan_xor1({-4, 4, 81}, p);
        EXPECT_NEAR(s.dip.visibility, v * v, 1e-6) << v;
        EXPECT_NEAR(s.zero_delay_error(), (1 - v * v) / 2, 1e-12) << v;
    }
    DelayScan ideal = hom_scan_xor1({}, Physics{});
    EXPECT_LE(ideal.zero_delay_error(), 1e-12);
}

TEST(experiments, full_scan_ideal_visibility) {
    DelayScan s = hom_scan_full({}, Physics{});
    EXPECT_NEAR(s.dip.visibility, 1, 1e-6);
}

TEST(experiments, visibility_monotone_in_overlaps) {
    double last = -1;
    for (double v : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        Physics p;
        p.v12 = v;
        double vis = scan_visibility(OverlapParam::V12, p);
        EXPECT_GE(vis, last - 1e-9);
        last = vis;
    }
    last = -1;
    Physics base;
    base.v12 = 0.95;
    const double top = max_feasible_kappa(base.v12);
    for (double k : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        Physics p = base;
        p.kappa = k * top;
        double vis = scan_visibility(OverlapParam::Kappa, p);
        EXPECT_GE(vis, last - 1e-9);
        last = vis;
    }
}

TEST(experiments, calibration) {
    Calibration one = calibrate_overlap(1.0, OverlapParam::V12, Physics{});
    EXPECT_EQ(one.value, 1);
    Calibration two = calibrate_overlap(0.959, OverlapParam::V12, Physics{});
    EXPECT_NEAR(two.value, std::sqrt(0.959), 1e-3);
    EXPECT_NEAR(two.visibility, 0.959, 1e-3);
    EXPECT_LE(two.iterations, 40);
    Physics low;
    low.v12 = 0.5;
    EXPECT_THROW(calibrate_overlap(0.9, OverlapParam::Kappa, low), NotBracketed);
    EXPECT_THROW(calibrate_overlap(0, OverlapParam::V12, Physics{}), std::invalid_argument);
}

TEST(experiments, malus_peaks) {
    AnalyzerScan a = malus_scan({QubitPrep{15}, QubitPrep{0}, QubitPrep{90}}, {}, Physics{});
    EXPECT_NEAR(a.fit.peak_deg, 75, 1e-6);
    ASSERT_EQ(a.points.size(), 12u);
    for (const auto &p : a.points) {
        EXPECT_NEAR(a.fit(p.theta3_deg), p.coincidence.probability, 1e-10);
    }
    AnalyzerScan b = malus_scan({QubitPrep{15}, QubitPrep{90}, QubitPrep{90}}, {}, Physics{});
    EXPECT_NEAR(b.fit.peak_deg, 15, 1e-6);
}

TEST(experiments, birefringence_shifts_peak) {
    for (double eps : {2.0, -3.0}) {
        Physics p;
        p.birefringence_deg = eps;
        AnalyzerScan a = malus_scan({QubitPrep{15}, QubitPrep{0}, QubitPrep{90}}, {}, p);
        double shift = std::remainder(a.fit.peak_deg - 75, 180.0);
        EXPECT_NEAR(std::abs(shift), std::abs(eps), 1e-6) << eps;
    }
}

TEST(experiments, monte_carlo_engine_agrees) {
    EngineConfig mc{EngineKind::MonteCarlo, 200000, 3, 2};
    Physics p;
    p.v12 = 0.9;
    p.kappa = 0.7;
    TruthTableReport exact = truth_table_experiment(p);
    TruthTableReport sampled = truth_table_experiment(p, mc);
    for (size_t k = 0; k < exact.rows.size(); k++) {
        for (auto [e, s] : {std::pair{exact.rows[k].out0, sampled.rows[k].out0}, std::pair{exact.rows[k].out1, sampled.rows[k].out1}}) {
            double sd = std::sqrt(e.probability * (1 - e.probability) / s.trials);
            EXPECT_NEAR(s.probability, e.probability, 4 * sd + 1e-12);
        }
    }
}
