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

#include <Eigen/QR>
#include <algorithm>
#include <numeric>
#include <random>

#include "support.h"
#include "xorsim/elements.h"
#include "xorsim/errors.h"

using namespace xorsim;
using xorsim::testing::mode;
using xorsim::testing::photon;

namespace {

const double kInvSqrt2 = 1 / std::sqrt(2.0);

Amplitude amp(const StateVector &s, std::vector<OccupationPattern::Entry> entries) {
    return s.amplitude(OccupationPattern(std::move(entries)));
}

void expect_states_near(const StateVector &a, const StateVector &b, double tol = 1e-12) {
    StateVector d = a - b;
    for (const auto &[p, x] : d.terms()) {
        EXPECT_LT(std::abs(x), tol) << p.str();
    }
}

/// Permanent by direct summation over permutations.
Amplitude permanent(const Eigen::MatrixXcd &m) {
    std::vector<int> perm(m.rows());
    std::iota(perm.begin(), perm.end(), 0);
    Amplitude total = 0;
    do {
        Amplitude term = 1;
        for (int r = 0; r < m.rows(); r++) {
            term *= m(r, perm[r]);
        }
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

double factorial(int n) {
    double f = 1;
    for (int k = 2; k <= n; k++) {
        f *= k;
    }
    return f;
}

Eigen::MatrixXcd random_unitary(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0, 1);
    Eigen::MatrixXcd z(n, n);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            z(i, j) = Amplitude(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

}  // namespace

TEST(elements, identity_transform) {
    ModeTransform id({{"a", 0}, {"a", 1}}, {{"a", 0}, {"a", 1}}, Eigen::MatrixXcd::Identity(2, 2), true);
    StateVector s = photon("a", 1);
    expect_states_near(apply_transform(s, id), s);
}

TEST(elements, rejects_non_unitary_flag) {
    Eigen::MatrixXcd m(2, 2);
    m << 1, 1, 0, 1;
    EXPECT_THROW(ModeTransform({{"a", 0}, {"a", 1}}, {{"a", 0}, {"a", 1}}, m, true), std::invalid_argument);
    ModeTransform lossy({{"a", 0}, {"a", 1}}, {{"a", 0}, {"a", 1}}, m, false);
    EXPECT_GT(lossy.unitarity_residual(), 0.5);
}

TEST(elements, unknown_mode_on_touched_port) {
    ModeTransform t({{"a", 0}}, {{"a", 0}}, Eigen::MatrixXcd::Identity(1, 1), true);
    EXPECT_THROW(apply_transform(photon("a", 1), t), UnknownMode);
    expect_states_near(apply_transform(photon("b", 1), t), photon("b", 1));
}

TEST(elements, hong_ou_mandel_bunching) {
    StateVector in = tensor(photon("a", 0), photon("b", 0));
    StateVector out = apply_transform(in, beam_splitter("a", "b"));
    EXPECT_LT(std::abs(amp(out, {{mode("a", 0), 1}, {mode("b", 0), 1}})), 1e-15);
    EXPECT_NEAR(std::abs(amp(out, {{mode("a", 0), 2}})), kInvSqrt2, 1e-15);
    EXPECT_NEAR(std::abs(amp(out, {{mode("b", 0), 2}})), kInvSqrt2, 1e-15);
    // Orthogonal temporal modes do not interfere.
    StateVector far = apply_transform(tensor(photon("a", 0, 0), photon("b", 0, 1)), beam_splitter("a", "b"));
    double coincidence = std::norm(amp(far, {{mode("a", 0, 0), 1}, {mode("b", 0, 1), 1}})) +
                         std::norm(amp(far, {{mode("a", 0, 1), 1}, {mode("b", 0, 0), 1}}));
    EXPECT_NEAR(coincidence, 0.5, 1e-15);
}

TEST(elements, apply_transform_matches_permanents) {
    std::mt19937_64 rng(2024);
    const std::vector<Channel> channels = {{"a", 0}, {"a", 1}, {"b", 0}, {"b", 1}, {"c", 0}, {"c", 1}};
    const int modes = static_cast<int>(channels.size());
    std::uniform_int_distribution<int> pick(0, modes - 1);
    std::uniform_int_distribution<int> photons(1, 3);
    for (int trial = 0; trial < 40; trial++) {
        Eigen::MatrixXcd u = random_unitary(modes, rng);
        ModeTransform t(channels, channels, u, true);
        std::vector<int> n(modes, 0);
        for (int k = photons(rng); k > 0; k--) {
            n[pick(rng)]++;
        }
        std::vector<OccupationPattern::Entry> entries;
        std::vector<int> cols;
        for (int i = 0; i < modes; i++) {
            if (n[i]) {
                entries.push_back({mode(channels[i].port, channels[i].polarization), n[i]});
            }
            cols.insert(cols.end(), n[i], i);
        }
        StateVector out = apply_transform(StateVector::basis(OccupationPattern(entries)), t);
        EXPECT_NEAR(out.norm_squared(), 1, 1e-12);
        const int total = static_cast<int>(cols.size());
        for (const auto &[p, a] : out.terms()) {
            EXPECT_EQ(p.total_photons(), total);
        }
        // Every output occupation with the same photon number.
        std::vector<int> m(modes, 0);
        std::function<void(int, int)> visit = [&](int k, int left) {
            if (k == modes - 1) {
                m[k] = left;
                std::vector<int> rows;
                std::vector<OccupationPattern::Entry> out_entries;
                double norm = 1;
                for (int j = 0; j < modes; j++) {
                    rows.insert(rows.end(), m[j], j);
                    if (m[j]) {
                        out_entries.push_back({mode(channels[j].port, channels[j].polarization), m[j]});
                    }
                    norm *= factorial(m[j]) * factorial(n[j]);
                }
                Eigen::MatrixXcd sub(total, total);
                for (int r = 0; r < total; r++) {
                    for (int c = 0; c < total; c++) {
                        sub(r, c) = u(rows[r], cols[c]);
                    }
                }
                Amplitude expected = permanent(sub) / std::sqrt(norm);
                EXPECT_LT(std::abs(amp(out, out_entries) - expected), 1e-10);
                return;
            }
            for (int c = 0; c <= left; c++) {
                m[k] = c;
                visit(k + 1, left - c);
            }
        };
        visit(0, total);
    }
}

TEST(elements, pbs_twice_is_identity) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> angle(0, 180);
    for (int trial = 0; trial < 20; trial++) {
        StateVector s = tensor(photon("a", 0), photon("b", 1));
        s = apply_transform(s, half_wave_plate("a", angle(rng)));
        s = apply_transform(s, half_wave_plate("b", angle(rng)));
        StateVector twice = apply_transform(apply_transform(s, pbs("a", "b")), pbs("a", "b"));
        expect_states_near(twice, s);
    }
}

TEST(elements, analyzer_is_idempotent_and_contracting) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> angle(0, 180);
    for (int trial = 0; trial < 20; trial++) {
        StateVector s = tensor(photon("a", 0), photon("b", 0));
        s = apply_transform(s, half_wave_plate("a", angle(rng)));
        s = apply_transform(s, beam_splitter("a", "b"));
        ProjectiveFilter f{"a", angle(rng)};
        StateVector once = analyzer_project(s, f);
        expect_states_near(analyzer_project(once, f), once);
        EXPECT_LE(once.norm_squared(), s.norm_squared() + 1e-15);
    }
}

TEST(elements, pbs_conventions) {
    ModeTransform t = pbs("a", "b");
    EXPECT_LT(t.unitarity_residual(), 1e-12);
    StateVector plus_a = (photon("a", 0) + photon("a", 1)).scaled(kInvSqrt2);
    StateVector minus_a = (photon("a", 0) - photon("a", 1)).scaled(kInvSqrt2);
    StateVector minus_b = (photon("b", 0) - photon("b", 1)).scaled(kInvSqrt2);
    expect_states_near(apply_transform(plus_a, t), plus_a);
    expect_states_near(apply_transform(minus_a, t), minus_b);
    expect_states_near(apply_transform(photon("a", 0), t), (plus_a + minus_b).scaled(kInvSqrt2));
}

TEST(elements, half_wave_plate_examples) {
    expect_states_near(apply_transform(photon("a", 0), half_wave_plate("a", 0)), photon("a", 0));
    StateVector plus = (photon("a", 0) + photon("a", 1)).scaled(kInvSqrt2);
    expect_states_near(apply_transform(photon("a", 0), half_wave_plate("a", 22.5)), plus);
    StateVector s15 = apply_transform(photon("a", 0), half_wave_plate("a", 7.5));
    EXPECT_NEAR(amp(s15, {{mode("a", 0), 1}}).real(), 0.97, 0.005);
    EXPECT_NEAR(amp(s15, {{mode("a", 1), 1}}).real(), 0.26, 0.005);
    EXPECT_LT(half_wave_plate("a", 33).unitarity_residual(), 1e-12);
}

TEST(elements, rotation_examples) {
    expect_states_near(apply_transform(photon("a", 1), polarization_rotation("a", 0)), photon("a", 1));
    StateVector plus = (photon("a", 0) + photon("a", 1)).scaled(kInvSqrt2);
    expect_states_near(apply_transform(photon("a", 0), polarization_rotation("a", 45)), plus);
    StateVector v = apply_transform(photon("a", 0), polarization_rotation("a", 90));
    EXPECT_NEAR(std::abs(amp(v, {{mode("a", 1), 1}})), 1, 1e-15);
}

TEST(elements, analyzer_examples) {
    expect_states_near(analyzer_project(photon("a", 0), {"a", 0}), photon("a", 0));
    EXPECT_TRUE(analyzer_project(photon("a", 1), {"a", 0}).is_zero());
    StateVector plus = (photon("a", 0) + photon("a", 1)).scaled(kInvSqrt2);
    StateVector passed = analyzer_project(plus, {"a", 0});
    expect_states_near(passed, photon("a", 0).scaled(kInvSqrt2));
    EXPECT_NEAR(passed.norm_squared(), 0.5, 1e-15);
    // Malus: pass probability cos^2 of the angle difference.
    StateVector at30 = apply_transform(photon("a", 0), polarization_rotation("a", 30));
    EXPECT_NEAR(analyzer_project(at30, {"a", 75}).norm_squared(), std::pow(std::cos(degrees_to_radians(45)), 2), 1e-12);
    EXPECT_LT(analyzer_dilation("a", 17, "sink").unitarity_residual(), 1e-12);
}

TEST(elements, transforms_preserve_norm) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(0, 180);
    for (int trial = 0; trial < 30; trial++) {
        StateVector s = tensor(photon("a", trial % 2), photon("b", 0));
        s = apply_transform(s, half_wave_plate("a", angle(rng)));
        s = apply_transform(s, polarization_rotation("b", angle(rng)));
        s = apply_transform(s, pbs("a", "b"));
        s = apply_transform(s, beam_splitter("a", "b"));
        EXPECT_NEAR(s.norm_squared(), 1, 1e-12);
    }
}
