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

#ifndef XORSIM_TESTS_SUPPORT_H
#define XORSIM_TESTS_SUPPORT_H

#include <array>
#include <cmath>
#include <random>

#include "xorsim/detect.h"
#include "xorsim/elements.h"
#include "xorsim/fock.h"
#include "xorsim/xor_gate.h"

namespace xorsim::testing {

inline ModeLabel mode(const std::string &port, int pol, int t = 0) {
    return ModeLabel(port, pol, t);
}

inline StateVector photon(const std::string &port, int pol, int t = 0) {
    return create_photon(StateVector::vacuum(), mode(port, pol, t));
}

/// a|00> + b|01> + g|10> + d|11> with the first qubit on q1 and the second on q2.
inline StateVector two_qubit_input(Amplitude a, Amplitude b, Amplitude g, Amplitude d) {
    const std::array<Amplitude, 4> c = {a, b, g, d};
    StateVector out;
    for (int k = 0; k < 4; k++) {
        StateVector s = create_photon(photon("q1", k >> 1), mode("q2", k & 1));
        out = out + s.scaled(c[k]);
    }
    return out;
}

struct GateRun {
    double probability = 0;
    /// Output qubit on q2, normalized; zero when the probability is zero.
    QubitState output{0, 0};
};

/// One gate assembled from elements: pbs, analyzer at 0 on q1, number-resolving detector on q1,
/// keep exactly one photon there.
inline GateRun run_gate_elements(const StateVector &input) {
    StateVector s = apply_transform(input, pbs("q1", "q2"));
    s = apply_transform(s, analyzer_dilation("q1", 0, "q1~sink"));
    std::vector<DetectorSpec> detectors = {{"D1", "q1", DetectorMode::NumberResolving, 1}};
    GateRun run;
    for (const auto &o : outcome_distribution(s, detectors, {"q1~sink"})) {
        if (o.pattern == DetectionPattern{{1}, false}) {
            run.probability = o.probability;
            StateVector r = o.residual.pure();
            run.output = {r.amplitude(OccupationPattern({{mode("q2", 0), 1}})), r.amplitude(OccupationPattern({{mode("q2", 1), 1}}))};
        }
    }
    return run;
}

/// |<a|b>|^2 for unit qubit states.
inline double qubit_fidelity(const QubitState &a, const QubitState &b) {
    return std::norm(std::conj(a.zero) * b.zero + std::conj(a.one) * b.one);
}

inline QubitState random_qubit(std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0, 1);
    Amplitude z(n(rng), n(rng));
    Amplitude o(n(rng), n(rng));
    double norm = std::sqrt(std::norm(z) + std::norm(o));
    return {z / norm, o / norm};
}

}  // namespace xorsim::testing

#endif
