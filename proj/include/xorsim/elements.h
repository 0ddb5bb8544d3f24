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

#ifndef XORSIM_ELEMENTS_H
#define XORSIM_ELEMENTS_H

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "xorsim/fock.h"

namespace xorsim {

/// Linear map on creation operators: a_i^dag -> sum_j U(j, i) b_j^dag.
///
/// Input and output lists name (port, polarization) channels. The temporal index of each photon is
/// carried through unchanged.
class ModeTransform {
   public:
    ModeTransform(std::vector<Channel> inputs, std::vector<Channel> outputs, Eigen::MatrixXcd matrix, bool unitary);

    const std::vector<Channel> &inputs() const {
        return inputs_;
    }
    const std::vector<Channel> &outputs() const {
        return outputs_;
    }
    const Eigen::MatrixXcd &matrix() const {
        return matrix_;
    }
    bool is_unitary() const {
        return unitary_;
    }
    /// max |(U^dag U - I)_ij|
    double unitarity_residual() const;

    /// Index of `channel` in the input list, or -1.
    int input_index(const Channel &channel) const;
    bool touches_port(const std::string &port) const;

   private:
    std::vector<Channel> inputs_;
    std::vector<Channel> outputs_;
    Eigen::MatrixXcd matrix_;
    bool unitary_;
};

/// Analyzer: photons on `port` are projected onto the linear polarization at `angle_deg` from |0>.
struct ProjectiveFilter {
    std::string port;
    double angle_deg = 0;
};

/// Expands every term's creation operators through `t`. Throws UnknownMode if an occupied mode
/// sits on one of t's input ports but its channel is not listed.
StateVector apply_transform(const StateVector &state, const ModeTransform &t);

/// Polarizing beam splitter in the diagonal basis: |+> keeps its port, |-> swaps ports,
/// with |+-> = (|0> +- |1>)/sqrt(2) and real positive coefficients.
ModeTransform pbs(const std::string &port_a, const std::string &port_b);

/// [[cos 2p, sin 2p], [sin 2p, -cos 2p]] with p = plate_angle_deg.
ModeTransform half_wave_plate(const std::string &port, double plate_angle_deg);

/// [[cos p, -sin p], [sin p, cos p]].
ModeTransform polarization_rotation(const std::string &port, double angle_deg);

/// Polarization-independent 50/50 coupler: a -> (a + b)/sqrt2, b -> (a - b)/sqrt2.
ModeTransform beam_splitter(const std::string &port_a, const std::string &port_b);

/// Unitary dilation of an analyzer: the pass-axis component stays on `port`, the orthogonal
/// component is routed to `sink_port` (polarization 0).
ModeTransform analyzer_dilation(const std::string &port, double angle_deg, const std::string &sink_port);

/// Absorbing projector. Branches in which any photon on the port is absorbed are dropped, so the
/// result is unnormalized and its squared norm is the pass probability.
StateVector analyzer_project(const StateVector &state, const ProjectiveFilter &filter);

double degrees_to_radians(double degrees);

}  // namespace xorsim

#endif
