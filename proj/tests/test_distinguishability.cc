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

#include <random>

#include "support.h"
#include "xorsim/distinguishability.h"
#include "xorsim/elements.h"
#include "xorsim/errors.h"

using namespace xorsim;

namespace {

/// Trapezoid integral of psi1 * psi2 with psi(t) = (pi s^2)^(-1/4) exp(-(t - t0)^2 / (2 s^2)).
double numeric_overlap(double t1, double s1, double t2, double s2) {
    auto psi = [](double t, double t0, double s) {
        return std::pow(M_PI * s * s, -0.25) * std::exp(-(t - t0) * (t - t0) / (2 * s * s));
    };
    const double lo = std::min(t1, t2) - 20 * std::max(s1, s2);
    const double hi = std::max(t1, t2) + 20 * std::max(s1, s2);
    const int n = 200000;
    const double h = (hi - lo) / n;
    double total = 0;
    for (int k = 0; k <= n; k++) {
        double t = lo + k * h;
        double w = (k == 0 || k == n) ? 0.5 : 1;
        total += w * psi(t, t1, s1) * psi(t, t2, s2);
    }
    return total * h;
}

}  // namespace

TEST(distinguishability, overlap_limits) {
    PhotonWavepacket a{0, 1, "x"};
    EXPECT_NEAR(std::abs(gaussian_overlap(a, a, 0.3) - 1.0), 0, 1e-15);
    EXPECT_LT(std::abs(gaussian_overlap(a, PhotonWavepacket{1e3, 1, "x"}, 1.0)), 1e-300);
    EXPECT_NEAR(gaussian_overlap(a, PhotonWavepacket{0, 1, "y"}, 0.3).real(), 0.3, 1e-15);
}

TEST(distinguishability, overlap_matches_numeric_integral) {
    EXPECT_NEAR(gaussian_overlap({0, 1, "x"}, {2, 1, "x"}, 1.0).real(), std::exp(-1.0), 1e-12);
    EXPECT_NEAR(gaussian_overlap({0, 1, "x"}, {std::sqrt(2.0), 1, "x"}, 1.0).real(), std::exp(-0.5), 1e-12);
    const double cases[][4] = {{0, 1, 2, 1}, {0, 1, std::sqrt(2.0), 1}, {0.3, 0.7, -0.4, 1.6}, {1, 2, 1, 0.5}};
    for (const auto &c : cases) {
        double expected = numeric_overlap(c[0], c[1], c[2], c[3]);
        EXPECT_NEAR(gaussian_overlap({c[0], c[1], "x"}, {c[2], c[3], "x"}, 1.0).real(), expected, 1e-9);
    }
}

TEST(distinguishability, family_table) {
    FamilyOverlaps f(0.8);
    f.set("spdc1", "spdc2", 0.9);
    EXPECT_EQ(f.factor("laser", "laser"), 1);
    EXPECT_EQ(f.factor("spdc2", "spdc1"), 0.9);
    EXPECT_EQ(f.factor("spdc1", "laser"), 0.8);
    EXPECT_THROW(f.set("a", "b", 1.5), std::invalid_argument);
    EXPECT_THROW(FamilyOverlaps(-0.1), std::invalid_argument);
}

TEST(distinguishability, identical_photons_share_one_mode) {
    std::vector<PhotonWavepacket> ps(3, PhotonWavepacket{0, 1, "x"});
    TemporalBasis b = build_temporal_basis(ps, FamilyOverlaps());
    for (int i = 0; i < 3; i++) {
        auto e = b.expansion(i);
        ASSERT_EQ(e.size(), 1u);
        EXPECT_EQ(e[0].first, 0);
        EXPECT_NEAR(std::abs(e[0].second - 1.0), 0, 1e-15);
    }
}

TEST(distinguishability, two_photon_decomposition) {
    const double v = 0.6;
    OverlapMatrix g(2, 2);
    g << 1, v, v, 1;
    TemporalBasis b = build_temporal_basis(g);
    EXPECT_NEAR(std::abs(b.coefficients(0, 0) - 1.0), 0, 1e-15);
    EXPECT_NEAR(std::abs(b.coefficients(0, 1)), 0, 1e-15);
    EXPECT_NEAR(std::abs(b.coefficients(1, 0) - v), 0, 1e-15);
    EXPECT_NEAR(std::abs(b.coefficients(1, 1) - std::sqrt(1 - v * v)), 0, 1e-15);
}

TEST(distinguishability, random_gram_factorizes) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2, 2);
    std::uniform_real_distribution<double> w(0.5, 2);
    for (int trial = 0; trial < 50; trial++) {
        std::vector<PhotonWavepacket> ps;
        FamilyOverlaps f(0.7);
        for (int k = 0; k < 3; k++) {
            ps.push_back({u(rng), w(rng), k == 2 ? "laser" : "spdc"});
        }
        OverlapMatrix g = overlap_matrix(ps, f);
        TemporalBasis b = build_temporal_basis(g);
        EXPECT_LT((b.coefficients * b.coefficients.adjoint() - g).cwiseAbs().maxCoeff(), 1e-12);
        for (int i = 0; i < 3; i++) {
            EXPECT_NEAR(b.coefficients.row(i).squaredNorm(), 1, 1e-12);
            for (int k = i + 1; k < 3; k++) {
                EXPECT_EQ(b.coefficients(i, k), Amplitude(0));
            }
        }
    }
}

TEST(distinguishability, rejects_invalid_gram) {
    OverlapMatrix g(3, 3);
    g << 1, 0.9, 1, 0.9, 1, 1, 1, 1, 1;
    EXPECT_THROW(build_temporal_basis(g), NotPSD);
    OverlapMatrix diag(2, 2);
    diag << 0.9, 0, 0, 1;
    EXPECT_THROW(build_temporal_basis(diag), NotPSD);
}

TEST(distinguishability, hom_visibility_is_overlap_squared) {
    for (double v : {0.0, 0.5, 0.9, 1.0}) {
        OverlapMatrix g(2, 2);
        g << 1, v, v, 1;
        TemporalBasis b = build_temporal_basis(g);
        StateVector s = StateVector::vacuum();
        StateVector a = xorsim::testing::photon("a", 0, 0);
        StateVector in;
        for (const auto &[k, c] : b.expansion(1)) {
            in = in + create_photon(a, ModeLabel("b", 0, k)).scaled(c);
        }
        StateVector out = apply_transform(in, beam_splitter("a", "b"));
        double coincidence = 0;
        for (const auto &[p, x] : out.terms()) {
            int on_a = 0, on_b = 0;
            for (const auto &[m, n] : p.entries()) {
                (m.port == "a" ? on_a : on_b) += n;
            }
            if (on_a == 1 && on_b == 1) {
                coincidence += std::norm(x);
            }
        }
        // Distinguishable baseline is 1/2.
        EXPECT_NEAR(1 - coincidence / 0.5, v * v, 1e-12) << v;
    }
}

TEST(distinguishability, overlap_symmetric_and_bounded) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> t(-3, 3);
    std::uniform_real_distribution<double> w(0.2, 3);
    std::uniform_real_distribution<double> k(0, 1);
    for (int trial = 0; trial < 200; trial++) {
        PhotonWavepacket a{t(rng), w(rng), "x"};
        PhotonWavepacket b{t(rng), w(rng), trial % 2 ? "x" : "y"};
        double kappa = k(rng);
        EXPECT_EQ(gaussian_overlap(a, b, kappa), gaussian_overlap(b, a, kappa));
        EXPECT_LE(std::abs(gaussian_overlap(a, b, kappa)), 1.0);
    }
}

TEST(distinguishability, basis_reproduces_gram_under_permutation) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> t(-1, 1);
    FamilyOverlaps f(0.6);
    f.set("s", "i", 0.9);
    for (int trial = 0; trial < 20; trial++) {
        std::vector<PhotonWavepacket> ps = {{t(rng), 1, "s"}, {t(rng), 1, "i"}, {t(rng), 1, "laser"}, {t(rng), 1, "s"}};
        std::vector<int> perm = {2, 0, 3, 1};
        std::vector<PhotonWavepacket> permuted;
        for (int i : perm) {
            permuted.push_back(ps[i]);
        }
        OverlapMatrix g = overlap_matrix(ps, f);
        TemporalBasis b = build_temporal_basis(permuted, f);
        Eigen::MatrixXcd lp = b.coefficients;
        Eigen::MatrixXcd l(lp.rows(), lp.cols());
        for (size_t r = 0; r < perm.size(); r++) {
            l.row(perm[r]) = lp.row(r);
        }
        EXPECT_LT((l * l.adjoint() - g).cwiseAbs().maxCoeff(), 1e-12);
    }
}
