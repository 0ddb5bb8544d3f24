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

#include "xorsim/distinguishability.h"

#include <cmath>
#include <stdexcept>

#include "xorsim/errors.h"

namespace xorsim {

namespace {

constexpr double kPsdTolerance = 1e-9;
constexpr double kZeroPivot = 1e-12;
constexpr double kCoefficientFloor = 1e-15;

}  // namespace

FamilyOverlaps::FamilyOverlaps(double default_cross) : default_cross_(default_cross) {
    if (!(default_cross >= 0 && default_cross <= 1)) {
        throw std::invalid_argument("cross-family overlap must lie in [0, 1]");
    }
}

double FamilyOverlaps::factor(const std::string &a, const std::string &b) const {
    if (a == b) {
        return 1;
    }
    auto it = pairs_.find(a < b ? std::pair{a, b} : std::pair{b, a});
    return it == pairs_.end() ? default_cross_ : it->second;
}

void FamilyOverlaps::set(const std::string &a, const std::string &b, double value) {
    if (!(value >= 0 && value <= 1)) {
        throw std::invalid_argument("family overlap must lie in [0, 1]");
    }
    if (a == b) {
        throw std::invalid_argument("a family always overlaps itself with factor 1");
    }
    pairs_[a < b ? std::pair{a, b} : std::pair{b, a}] = value;
}

Amplitude gaussian_overlap(const PhotonWavepacket &w1, const PhotonWavepacket &w2, double cross_family_factor) {
    if (!(w1.width_sigma > 0 && w2.width_sigma > 0)) {
        throw std::invalid_argument("wavepacket width must be positive");
    }
    double kappa = w1.family == w2.family ? 1.0 : cross_family_factor;
    double s2 = w1.width_sigma * w1.width_sigma + w2.width_sigma * w2.width_sigma;
    double dt = w1.center_time - w2.center_time;
    return kappa * std::sqrt(2 * w1.width_sigma * w2.width_sigma / s2) * std::exp(-dt * dt / (2 * s2));
}

Amplitude gaussian_overlap(const PhotonWavepacket &w1, const PhotonWavepacket &w2, const FamilyOverlaps &families) {
    return gaussian_overlap(w1, w2, families.factor(w1.family, w2.family));
}

OverlapMatrix overlap_matrix(const std::vector<PhotonWavepacket> &photons, const FamilyOverlaps &families) {
    auto n = static_cast<Eigen::Index>(photons.size());
    OverlapMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; i++) {
        g(i, i) = 1;
        for (Eigen::Index j = 0; j < i; j++) {
            g(i, j) = gaussian_overlap(photons[i], photons[j], families);
            g(j, i) = std::conj(g(i, j));
        }
    }
    return g;
}

std::vector<std::pair<int, Amplitude>> TemporalBasis::expansion(int photon) const {
    std::vector<std::pair<int, Amplitude>> out;
    for (Eigen::Index k = 0; k <= photon; k++) {
        Amplitude c = coefficients(photon, k);
        if (std::abs(c) > kCoefficientFloor) {
            out.emplace_back(static_cast<int>(k), c);
        }
    }
    return out;
}

TemporalBasis build_temporal_basis(const OverlapMatrix &gram) {
    Eigen::Index n = gram.rows();
    if (gram.cols() != n) {
        throw NotPSD("overlap matrix must be square");
    }
    for (Eigen::Index i = 0; i < n; i++) {
        if (std::abs(gram(i, i) - 1.0) > 1e-12) {
            throw NotPSD("overlap matrix diagonal must be 1");
        }
        for (Eigen::Index j = 0; j < i; j++) {
            if (std::abs(gram(i, j) - std::conj(gram(j, i))) > 1e-12) {
                throw NotPSD("overlap matrix must be Hermitian");
            }
        }
    }
    if (n > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < -kPsdTolerance) {
            throw NotPSD("overlap matrix has a negative eigenvalue");
        }
    }

    // Cholesky with zero-pivot handling for rank-deficient (identical-photon) Gram matrices.
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; j++) {
        double d = gram(j, j).real();
        for (Eigen::Index k = 0; k < j; k++) {
            d -= std::norm(l(j, k));
        }
        if (d <= kZeroPivot) {
            continue;
        }
        double pivot = std::sqrt(d);
        l(j, j) = pivot;
        for (Eigen::Index i = j + 1; i < n; i++) {
            Amplitude s = gram(i, j);
            for (Eigen::Index k = 0; k < j; k++) {
                s -= l(i, k) * std::conj(l(j, k));
            }
            l(i, j) = s / pivot;
        }
    }
    for (Eigen::Index i = 0; i < n; i++) {
        double norm = l.row(i).norm();
        if (norm > 0) {
            l.row(i) /= norm;
        }
    }
    return {l};
}

TemporalBasis build_temporal_basis(const std::vector<PhotonWavepacket> &photons, const FamilyOverlaps &families) {
    return build_temporal_basis(overlap_matrix(photons, families));
}

}  // namespace xorsim
