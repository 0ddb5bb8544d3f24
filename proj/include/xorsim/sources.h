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

#ifndef XORSIM_SOURCES_H
#define XORSIM_SOURCES_H

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "xorsim/distinguishability.h"

namespace xorsim {

enum class SourceKind {
    Vacuum,
    Ideal,
    SpdcPair,
    Coherent,
};

/// One photon placed on an input port at the start of a trial.
struct EmittedPhoton {
    std::string port;
    /// Linear polarization angle from |0>.
    double angle_deg = 0;
    PhotonWavepacket wavepacket;

    bool operator==(const EmittedPhoton &) const = default;
};

struct SourceSpec {
    SourceKind kind = SourceKind::Vacuum;
    /// One port, or two (signal, idler) for SpdcPair.
    std::vector<std::string> ports;
    /// Emission polarization. Down-converted pairs share it.
    double angle_deg = 0;
    double pair_prob = 0;
    double mean_photons = 0;
    /// One per port.
    std::vector<PhotonWavepacket> wavepackets;

    static SourceSpec vacuum(std::string port);
    static SourceSpec ideal(std::string port, double angle_deg, PhotonWavepacket wavepacket);
    static SourceSpec spdc_pair(std::string port1, std::string port2, double pair_prob, PhotonWavepacket w1, PhotonWavepacket w2);
    static SourceSpec coherent(std::string port, double mean_photons, PhotonWavepacket wavepacket);

    /// Throws InvalidSpec: 0 <= p <= 0.1, 0 <= mu <= 0.5, port/wavepacket counts match the kind.
    void validate() const;

    bool operator==(const SourceSpec &) const = default;
};

/// Upper bounds of the truncated emission models.
constexpr double kMaxPairProb = 0.1;
constexpr double kMaxMeanPhotons = 0.5;
constexpr double kJointProbabilityFloor = 1e-12;

struct EmissionEvent {
    std::vector<EmittedPhoton> photons;
    double probability = 0;
    /// Photons contributed by each source, in source order.
    std::vector<int> photons_per_source;
};

/// Ideal: one photon. SpdcPair: {0, 1, 2} pairs with weights {1-p-p^2, p, p^2}. Coherent:
/// Poisson(mu) truncated at 2 photons and renormalized.
std::vector<EmissionEvent> emission_distribution(const SourceSpec &source);

/// Independent product of the sources' distributions; events under 1e-12 are dropped.
/// Throws PortCollision if two sources share a port.
std::vector<EmissionEvent> joint_emission(const std::vector<SourceSpec> &sources);

/// Reports which detectors a photon injected on `port` can reach.
using DetectorReach = std::function<bool(const std::string &port, const std::string &detector)>;

/// Error events (at least one down-converted photon able to reach `trigger_detector` while the
/// coherent pulse holds two photons) over valid events (one pair plus one coherent photon), by
/// enumeration of the joint emission distribution.
double error_to_valid_ratio(
    const SourceSpec &pair_source,
    const SourceSpec &coherent_source,
    const DetectorReach &reach,
    const std::string &trigger_detector);

/// Same, for the three-photon parity layout (pair on q1/q2, coherent pulse on q3, trigger D1).
double error_to_valid_ratio(double pair_prob, double mean_photons);

/// Bisection on mu in [0, 0.5] for a target ratio in the parity layout.
double mean_photons_for_error_ratio(double pair_prob, double target_ratio);

/// Inverse-CDF sampler over an event list.
class EventSampler {
   public:
    explicit EventSampler(const std::vector<EmissionEvent> &events);
    size_t sample(std::mt19937_64 &rng) const;

   private:
    std::vector<double> cumulative_;
};

}  // namespace xorsim

#endif
