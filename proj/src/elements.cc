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

#include "xorsim/elements.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "xorsim/errors.h"

namespace xorsim {

double degrees_to_radians(double degrees) {
    return degrees * std::numbers::pi / 180.0;
}

ModeTransform::ModeTransform(
    std::vector<Channel> inputs, std::vector<Channel> outputs, Eigen::MatrixXcd matrix, bool unitary)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)), matrix_(std::move(matrix)), unitary_(unitary) {
    if (matrix_.cols() != static_cast<Eigen::Index>(inputs_.size()) ||
        matrix_.rows() != static_cast<Eigen::Index>(outputs_.size())) {
        throw std::invalid_argument("transform matrix shape does not match its mode lists");
    }
    if (unitary_ && unitarity_residual() > 1e-12) {
        throw std::invalid_argument("transform flagged unitary but U^dag U != I");
    }
}

double ModeTransform::unitarity_residual() const {
    if (matrix_.rows() != matrix_.cols()) {
        return INFINITY;
    }
    Eigen::MatrixXcd d = matrix_.adjoint() * matrix_ - Eigen::MatrixXcd::Identity(matrix_.cols(), matrix_.cols());
    return d.cwiseAbs().maxCoeff();
}

int ModeTransform::input_index(const Channel &channel) const {
    auto it = std::find(inputs_.begin(), inputs_.end(), channel);
    return it == inputs_.end() ? -1 : static_cast<int>(it - inputs_.begin());
}

bool ModeTransform::touches_port(const std::string &port) const {
    return std::any_of(inputs_.begin(), inputs_.end(), [&](const Channel &c) { return c.port == port; });
}

StateVector apply_transform(const StateVector &state, const ModeTransform &t) {
    StateVector::Terms terms;
    for (const auto &[pattern, amp] : state.terms()) {
        std::vector<OccupationPattern::Entry> untouched;
        std::vector<std::pair<int, OccupationPattern::Entry>> moved;
        double factorial_norm = 1;
        for (const auto &entry : pattern.entries()) {
            const ModeLabel &mode = entry.first;
            int idx = t.input_index(mode.channel());
            if (idx < 0) {
                if (t.touches_port(mode.port)) {
                    throw UnknownMode("mode " + mode.str() + " is not an input of the transform");
                }
                untouched.push_back(entry);
                continue;
            }
            moved.push_back({idx, entry});
            for (int k = 2; k <= entry.second; k++) {
                factorial_norm *= k;
            }
        }
        // |n> = prod (a^dag)^n / sqrt(n!) |untouched>; substitute a^dag -> sum_j U(j, i) b_j^dag.
        StateVector::Terms partial{{OccupationPattern(std::move(untouched)), amp / std::sqrt(factorial_norm)}};
        for (const auto &[idx, entry] : moved) {
            for (int rep = 0; rep < entry.second; rep++) {
                StateVector::Terms next;
                for (Eigen::Index j = 0; j < t.matrix().rows(); j++) {
                    Amplitude c = t.matrix()(j, idx);
                    if (c == Amplitude{}) {
                        continue;
                    }
                    const Channel &out = t.outputs()[j];
                    ModeLabel label(out.port, out.polarization, entry.first.temporal);
                    for (const auto &[p, a] : partial) {
                        next[p.with_added(label, 1)] += a * c * std::sqrt(static_cast<double>(p.count(label) + 1));
                    }
                }
                partial = std::move(next);
            }
        }
        for (const auto &[p, a] : partial) {
            terms[p] += a;
        }
    }
    return StateVector(std::move(terms), state.prune_epsilon());
}

namespace {

std::vector<Channel> port_channels(const std::string &port) {
    return {{port, 0}, {port, 1}};
}

}  // namespace

ModeTransform pbs(const std::string &port_a, const std::string &port_b) {
    if (port_a == port_b) {
        throw std::invalid_argument("pbs needs two distinct ports");
    }
    // Channel order: a0, a1, b0, b1. Column i is the image of input i.
    Eigen::MatrixXcd u(4, 4);
    u << 1, 1, 1, -1,  //
        1, 1, -1, 1,   //
        1, -1, 1, 1,   //
        -1, 1, 1, 1;
    u *= 0.5;
    std::vector<Channel> chans = port_channels(port_a);
    for (auto &c : port_channels(port_b)) {
        chans.push_back(c);
    }
    return ModeTransform(chans, chans, u, true);
}

ModeTransform half_wave_plate(const std::string &port, double plate_angle_deg) {
    double p = 2 * degrees_to_radians(plate_angle_deg);
    Eigen::MatrixXcd u(2, 2);
    u << std::cos(p), std::sin(p), std::sin(p), -std::cos(p);
    return ModeTransform(port_channels(port), port_channels(port), u, true);
}

ModeTransform polarization_rotation(const std::string &port, double angle_deg) {
    double p = degrees_to_radians(angle_deg);
    Eigen::MatrixXcd u(2, 2);
    u << std::cos(p), -std::sin(p), std::sin(p), std::cos(p);
    return ModeTransform(port_channels(port), port_channels(port), u, true);
}

ModeTransform beam_splitter(const std::string &port_a, const std::string &port_b) {
    if (port_a == port_b) {
        throw std::invalid_argument("beam splitter needs two distinct ports");
    }
    double r = 1 / std::sqrt(2.0);
    Eigen::MatrixXcd u(4, 4);
    u << r, 0, r, 0,  //
        0, r, 0, r,   //
        r, 0, -r, 0,  //
        0, r, 0, -r;
    std::vector<Channel> chans = port_channels(port_a);
    for (auto &c : port_channels(port_b)) {
        chans.push_back(c);
    }
    return ModeTransform(chans, chans, u, true);
}

ModeTransform analyzer_dilation(const std::string &port, double angle_deg, const std::string &sink_port) {
    if (port == sink_port) {
        throw std::invalid_argument("analyzer sink must differ from its port");
    }
    double th = degrees_to_radians(angle_deg);
    double c = std::cos(th);
    double s = std::sin(th);
    // In the (pass, orth, sink0, sink1) frame the map swaps orth <-> sink0. Rotate back to
    // computational channels: pass = (c, s), orth = (-s, c).
    Eigen::MatrixXcd frame = Eigen::MatrixXcd::Identity(4, 4);
    frame(0, 0) = c;
    frame(1, 0) = s;
    frame(0, 1) = -s;
    frame(1, 1) = c;
    Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(4, 4);
    swap(0, 0) = 1;
    swap(2, 1) = 1;
    swap(1, 2) = 1;
    swap(3, 3) = 1;
    Eigen::MatrixXcd u = frame * swap * frame.adjoint();
    std::vector<Channel> chans = port_channels(port);
    for (auto &ch : port_channels(sink_port)) {
        chans.push_back(ch);
    }
    return ModeTransform(chans, chans, u, true);
}

StateVector analyzer_project(const StateVector &state, const ProjectiveFilter &filter) {
    const std::string sink = filter.port + "~absorbed";
    StateVector routed = apply_transform(state, analyzer_dilation(filter.port, filter.angle_deg, sink));
    return select_terms(routed, [&](const OccupationPattern &p) {
        return std::none_of(p.entries().begin(), p.entries().end(), [&](const auto &e) { return e.first.port == sink; });
    });
}

}  // namespace xorsim
