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

#ifndef XORSIM_XOR_GATE_H
#define XORSIM_XOR_GATE_H

#include "xorsim/circuit_graph.h"
#include "xorsim/fock.h"

namespace xorsim {

/// Single-qubit polarization state zero|0> + one|1>.
struct QubitState {
    Amplitude zero;
    Amplitude one;
};

/// Linear polarization prepared by a half-wave plate at half the angle.
struct QubitPrep {
    double angle_deg = 0;

    Amplitude zero() const;
    Amplitude one() const;
    double plate_angle_deg() const {
        return angle_deg / 2;
    }
};

/// Post-selected gate output for the input a|00> + b|01> + g|10> + d|11>: the normalized
/// (a + d)|0> + (b + g)|1>. Throws VanishingOutput when that vector's norm^2 is below 1e-14.
QubitState xor_conditional_output(Amplitude a, Amplitude b, Amplitude g, Amplitude d);

/// (|a + d|^2 + |b + g|^2) / 4 for a unit-norm input.
double xor_success_probability(Amplitude a, Amplitude b, Amplitude g, Amplitude d);

/// Physical parameters shared by the circuit builders.
struct Physics {
    /// Intrinsic overlap of the two down-converted photons.
    double v12 = 1;
    /// Intrinsic overlap between down-converted photons and the laser-pulse photon.
    double kappa = 1;
    double sigma = 1;
    /// 0 selects ideal single photons on q1/q2.
    double pair_prob = 0;
    /// 0 selects an ideal single photon on q3.
    double mean_photons = 0;
    /// Polarization rotation of the fiber linking the two gates.
    double birefringence_deg = 0;
};

/// Family names the builders assign.
inline constexpr const char *kSignalFamily = "spdc1";
inline constexpr const char *kIdlerFamily = "spdc2";
inline constexpr const char *kLaserFamily = "laser";

struct ParitySettings {
    double theta3_deg = 0;
    double delay_q1 = 0;
    double delay_q3 = 0;
};

/// Two cascaded gates: sources -> wave plates -> pbs(q1, q2), analyzer 0 and D1 on q1 -> fiber on
/// q2 -> pbs(q2, q3), analyzer 0 and D2 on q3 -> analyzer theta3 and D3 on q2; coincidence
/// D1 & D2 & D3.
CircuitGraph build_parity_circuit(
    QubitPrep q1, QubitPrep q2, QubitPrep q3, const Physics &physics = {}, const ParitySettings &settings = {});

/// The first gate alone, with photon 3 blocked, the second gate's analyzers removed, and a 45
/// degree rotation on the link: D1 & D3 reads logical 0, D1 & D2 reads logical 1.
CircuitGraph build_xor1_interrupted(QubitPrep q1, QubitPrep q2, const Physics &physics = {}, double delay_q1 = 0);

/// One gate with ideal photons and a number-resolving detector; q2 is the undetected output.
CircuitGraph build_single_xor(QubitPrep q1, QubitPrep q2);

}  // namespace xorsim

#endif
