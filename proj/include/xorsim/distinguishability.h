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

#ifndef XORSIM_DISTINGUISHABILITY_H
#define XORSIM_DISTINGUISHABILITY_H

#include <Eigen/Dense>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "xorsim/fock.h"

namespace xorsim {

/// Transform-limited Gaussian temporal envelope of one photon.
struct PhotonWavepacket {
    double center_time = 0;
    double width_sigma = 1;
    /// Photon family (e.g. down-conversion arm vs. attenuated laser pulse).
    std::string family;

    bool operator==(const PhotonWavepacket &) const = default;
};

/// Intrinsic overlap factor between photon families. Same family -> 1; a pair listed explicitly
/// uses its own factor; any other cross-family pair uses `default_cross`.
class FamilyOverlaps {
   public:
    FamilyOverlaps() = default;
    explicit FamilyOverlaps(double default_cross);

    double factor(const std::string &a, const std::string &b) const;
    void set(const std::string &a, const std::string &b, double value);
    double default_cross() const {
        return default_cross_;
    }
    const std::map<std::pair<std::string, std::string>, double> &pairs() const {
        return pairs_;
    }

    bool operator==(const FamilyOverlaps &) const = default;

   private:
    double default_cross_ = 1;
    std::map<std::pair<std::string, std::string>, double> pairs_;
};

/// kappa * sqrt(2 s1 s2 / (s1^2 + s2^2)) * exp(-dt^2 / (2 (s1^2 + s2^2))).
Amplitude gaussian_overlap(const PhotonWavepacket &w1, const PhotonWavepacket &w2, double cross_family_factor);
Amplitude gaussian_overlap(const PhotonWavepacket &w1, const PhotonWavepacket &w2, const FamilyOverlaps &families);

using OverlapMatrix = Eigen::MatrixXcd;

OverlapMatrix overlap_matrix(const std::vector<PhotonWavepacket> &photons, const FamilyOverlaps &families);

/// Lower-triangular L with G = L L^dag. Photon i is injected as sum_k L(i, k) a^dag_k over
/// orthonormal temporal modes k.
struct TemporalBasis {
    Eigen::MatrixXcd coefficients;

    /// Temporal indices k with a nonzero coefficient in row i.
    std::vector<std::pair<int, Amplitude>> expansion(int photon) const;
};

/// Throws NotPSD if G has an eigenvalue below -1e-9 or is not Hermitian with unit diagonal.
TemporalBasis build_temporal_basis(const OverlapMatrix &gram);
TemporalBasis build_temporal_basis(const std::vector<PhotonWavepacket> &photons, const FamilyOverlaps &families);

}  // namespace xorsim

#endif
