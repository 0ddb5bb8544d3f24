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

#include "xorsim/xor_gate.h"

#include <cmath>

#include "xorsim/elements.h"
#include "xorsim/errors.h"

namespace xorsim {

Amplitude QubitPrep::zero() const {
    return std::cos(degrees_to_radians(angle_deg));
}

Amplitude QubitPrep::one() const {
    return std::sin(degrees_to_radians(angle_deg));
}

QubitState xor_conditional_output(Amplitude a, Amplitude b, Amplitude g, Amplitude d) {
    Amplitude zero = a + d;
    Amplitude one = b + g;
    double n2 = std::norm(zero) + std::norm(one);
    if (n2 < 1e-14) {
        throw VanishingOutput("gate output vanishes for this input");
    }
    double n = std::sqrt(n2);
    return {zero / n, one / n};
}

double xor_success_probability(Amplitude a, Amplitude b, Amplitude g, Amplitude d) {
    return 0.25 * (std::norm(a + d) + std::norm(b + g));
}

namespace {

void add_pair_sources(CircuitGraph &g, const Physics &physics) {
    PhotonWavepacket w1{0, physics.sigma, kSignalFamily};
    PhotonWavepacket w2{0, physics.sigma, kIdlerFamily};
    if (physics.pair_prob > 0) {
        g.stages.push_back(SourceStage{SourceSpec::spdc_pair("q1", "q2", physics.pair_prob, w1, w2)});
    } else {
        g.stages.push_back(SourceStage{SourceSpec::ideal("q1", 0, w1)});
        g.stages.push_back(SourceStage{SourceSpec::ideal("q2", 0, w2)});
    }
}

void set_families(CircuitGraph &g, const Physics &physics) {
    g.families = FamilyOverlaps(physics.kappa);
    g.families.set(kSignalFamily, kIdlerFamily, physics.v12);
}

DetectorStage detector(const std::string &name, const std::string &port) {
    return DetectorStage{DetectorSpec{name, port, DetectorMode::Threshold, 1}};
}

}  // namespace

CircuitGraph build_parity_circuit(QubitPrep q1, QubitPrep q2, QubitPrep q3, const Physics &physics, const ParitySettings &settings) {
    CircuitGraph g;
    add_pair_sources(g, physics);
    PhotonWavepacket w3{0, physics.sigma, kLaserFamily};
    if (physics.mean_photons > 0) {
        g.stages.push_back(SourceStage{SourceSpec::coherent("q3", physics.mean_photons, w3)});
    } else {
        g.stages.push_back(SourceStage{SourceSpec::ideal("q3", 0, w3)});
    }
    g.stages.push_back(DelayStage{"q1", settings.delay_q1});
    g.stages.push_back(DelayStage{"q3", settings.delay_q3});
    g.stages.push_back(HwpStage{"q1", q1.plate_angle_deg()});
    g.stages.push_back(HwpStage{"q2", q2.plate_angle_deg()});
    g.stages.push_back(HwpStage{"q3", q3.plate_angle_deg()});
    g.stages.push_back(PbsStage{"q1", "q2"});
    g.stages.push_back(AnalyzerStage{"q1", 0});
    g.stages.push_back(detector("D1", "q1"));
    g.stages.push_back(RotateStage{"q2", physics.birefringence_deg});
    g.stages.push_back(PbsStage{"q2", "q3"});
    g.stages.push_back(AnalyzerStage{"q3", 0});
    g.stages.push_back(detector("D2", "q3"));
    g.stages.push_back(AnalyzerStage{"q2", settings.theta3_deg});
    g.stages.push_back(detector("D3", "q2"));
    g.coincidence.required = {{"D1", 1}, {"D2", 1}, {"D3", 1}};
    set_families(g, physics);
    validate_graph(g);
    return g;
}

CircuitGraph build_xor1_interrupted(QubitPrep q1, QubitPrep q2, const Physics &physics, double delay_q1) {
    CircuitGraph g;
    add_pair_sources(g, physics);
    g.stages.push_back(SourceStage{SourceSpec::vacuum("q3")});
    g.stages.push_back(DelayStage{"q1", delay_q1});
    g.stages.push_back(HwpStage{"q1", q1.plate_angle_deg()});
    g.stages.push_back(HwpStage{"q2", q2.plate_angle_deg()});
    g.stages.push_back(PbsStage{"q1", "q2"});
    g.stages.push_back(AnalyzerStage{"q1", 0});
    g.stages.push_back(detector("D1", "q1"));
    g.stages.push_back(RotateStage{"q2", 45 + physics.birefringence_deg});
    g.stages.push_back(PbsStage{"q2", "q3"});
    g.stages.push_back(detector("D2", "q3"));
    g.stages.push_back(detector("D3", "q2"));
    g.coincidence.required = {{"D1", 1}};
    set_families(g, physics);
    validate_graph(g);
    return g;
}

CircuitGraph build_single_xor(QubitPrep q1, QubitPrep q2) {
    CircuitGraph g;
    g.stages.push_back(SourceStage{SourceSpec::ideal("q1", 0, PhotonWavepacket{0, 1, "ideal"})});
    g.stages.push_back(SourceStage{SourceSpec::ideal("q2", 0, PhotonWavepacket{0, 1, "ideal"})});
    g.stages.push_back(HwpStage{"q1", q1.plate_angle_deg()});
    g.stages.push_back(HwpStage{"q2", q2.plate_angle_deg()});
    g.stages.push_back(PbsStage{"q1", "q2"});
    g.stages.push_back(AnalyzerStage{"q1", 0});
    g.stages.push_back(DetectorStage{DetectorSpec{"D1", "q1", DetectorMode::NumberResolving, 1}});
    g.outputs = {"q2"};
    g.coincidence.required = {{"D1", 1}};
    validate_graph(g);
    return g;
}

}  // namespace xorsim
