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

#ifndef XORSIM_DETECT_H
#define XORSIM_DETECT_H

#include <Eigen/Dense>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "xorsim/fock.h"

namespace xorsim {

enum class DetectorMode {
    Threshold,
    NumberResolving,
};

/// A mode-insensitive bucket detector on one port.
struct DetectorSpec {
    std::string name;
    std::string port;
    DetectorMode mode = DetectorMode::Threshold;
    double efficiency = 1;

    bool operator==(const DetectorSpec &) const = default;
};

/// One outcome per detector (fired 0/1 for threshold, photon count for number-resolving), or the
/// reserved "lost" pattern holding analyzer-absorbed mass of an unnormalized input.
struct DetectionPattern {
    std::vector<int> outcomes;
    bool lost = false;

    static DetectionPattern lost_pattern() {
        return {{}, true};
    }
    /// `D1=1|D2=0|...`, or `lost`.
    std::string str(const std::vector<DetectorSpec> &detectors) const;

    auto operator<=>(const DetectionPattern &) const = default;
};

/// Classical mixture of normalized pure states.
struct Ensemble {
    std::vector<std::pair<double, StateVector>> components;

    /// Adds weight to an existing component equal to `state` up to a global phase, else appends.
    void add(double weight, StateVector state);
    bool is_pure(double tolerance = 1e-12) const;
    /// The single pure state. Throws std::logic_error on a proper mixture.
    StateVector pure() const;
    std::string str() const;
};

struct Outcome {
    DetectionPattern pattern;
    double probability = 0;
    /// State of the undetected, untraced modes given the pattern.
    Ensemble residual;
};

/// Born-rule distribution over detection patterns, sorted by pattern. Detectors collapse every
/// polarization and temporal mode on their port. Modes on `traced_ports` are unobserved
/// environment and are traced out of the residual. Non-unit efficiency is binomial thinning.
std::vector<Outcome> outcome_distribution(
    const StateVector &state, const std::vector<DetectorSpec> &detectors, const std::set<std::string> &traced_ports = {});

struct Conditional {
    Ensemble residual;
    double probability = 0;
};

/// The residual and probability of one pattern. Throws ImpossiblePattern below 1e-14.
Conditional postselect(
    const StateVector &state,
    const std::vector<DetectorSpec> &detectors,
    const DetectionPattern &pattern,
    const std::set<std::string> &traced_ports = {});

/// Required outcomes, all of which must hold for a trial to count as a coincidence.
struct CoincidenceSpec {
    std::vector<std::pair<std::string, int>> required;

    bool accepts(const DetectionPattern &pattern, const std::vector<DetectorSpec> &detectors) const;

    bool operator==(const CoincidenceSpec &) const = default;
};

/// sum_i w_i |<target|psi_i>|^2
double fidelity(const Ensemble &ensemble, const StateVector &target);

/// 2x2 polarization density matrix of the single photon on `port`, tracing temporal modes.
/// Every component must hold exactly one photon on the port and none elsewhere.
Eigen::Matrix2cd polarization_density(const Ensemble &ensemble, const std::string &port);

}  // namespace xorsim

#endif
