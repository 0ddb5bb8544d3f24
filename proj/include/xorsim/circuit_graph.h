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

#ifndef XORSIM_CIRCUIT_GRAPH_H
#define XORSIM_CIRCUIT_GRAPH_H

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "xorsim/detect.h"
#include "xorsim/distinguishability.h"
#include "xorsim/sources.h"

namespace xorsim {

struct SourceStage {
    SourceSpec spec;
    bool operator==(const SourceStage &) const = default;
};
struct HwpStage {
    std::string port;
    double plate_angle_deg = 0;
    bool operator==(const HwpStage &) const = default;
};
struct RotateStage {
    std::string port;
    double angle_deg = 0;
    bool operator==(const RotateStage &) const = default;
};
struct PbsStage {
    std::string port_a;
    std::string port_b;
    bool operator==(const PbsStage &) const = default;
};
struct AnalyzerStage {
    std::string port;
    double angle_deg = 0;
    bool operator==(const AnalyzerStage &) const = default;
};
/// Shifts the arrival time of photons emitted into `port`. Must precede any mixing of the port.
struct DelayStage {
    std::string port;
    double time = 0;
    bool operator==(const DelayStage &) const = default;
};
struct DetectorStage {
    DetectorSpec detector;
    bool operator==(const DetectorStage &) const = default;
};

using Stage = std::variant<SourceStage, HwpStage, RotateStage, PbsStage, AnalyzerStage, DelayStage, DetectorStage>;

enum class ScanKind {
    Delay,
    Analyzer,
};

/// Sweep of one delay's time or one analyzer's angle over `steps` evenly spaced points.
struct ScanSpec {
    ScanKind kind = ScanKind::Delay;
    std::string port;
    double from = 0;
    double to = 0;
    int steps = 1;

    std::vector<double> points() const;
    bool operator==(const ScanSpec &) const = default;
};

/// Stages in left-to-right order, wired by port name.
struct CircuitGraph {
    std::vector<Stage> stages;
    /// Undetected ports whose residual state is reported.
    std::vector<std::string> outputs;
    CoincidenceSpec coincidence;
    FamilyOverlaps families;
    std::optional<ScanSpec> scan;

    std::vector<SourceSpec> sources() const;
    std::vector<DetectorSpec> detectors() const;

    template <typename T>
    size_t count() const {
        size_t n = 0;
        for (const auto &s : stages) {
            n += std::holds_alternative<T>(s);
        }
        return n;
    }

    bool operator==(const CircuitGraph &) const = default;
};

enum class CircuitErrorKind {
    SyntaxError,
    UnknownPort,
    DuplicatePort,
    DuplicateDetector,
    UnknownDetector,
    DanglingPort,
    StageAfterDetector,
    DelayAfterMixing,
    UnknownScanTarget,
    InvalidValue,
};

const char *circuit_error_kind_name(CircuitErrorKind kind);

/// Parse or validation failure. `line` and `column` are 1-based; 0 when not tied to text.
struct CircuitError : std::runtime_error {
    CircuitError(CircuitErrorKind kind, int line, int column, const std::string &detail);

    CircuitErrorKind kind;
    int line;
    int column;
    std::string detail;
};

/// Line numbers attached to validation errors; any may be left empty or 0.
struct SourceLines {
    std::vector<int> stage_lines;
    int postselect_line = 0;
    int scan_line = 0;
    std::vector<int> output_lines;
};

/// Checks declaration-before-use, terminal detectors, delay placement, the coincidence and scan
/// references, and (when `require_termination`) that every photon-carrying port ends in a
/// detector or a declared output.
void validate_graph(const CircuitGraph &graph, const SourceLines &lines = {}, bool require_termination = true);

/// Analyzer on `port` to be swept (the last one on that port), or nullptr.
AnalyzerStage *find_analyzer(CircuitGraph &graph, const std::string &port);
DelayStage *find_delay(CircuitGraph &graph, const std::string &port);

/// The graph with its scan parameter set to `value`.
CircuitGraph with_scan_value(const CircuitGraph &graph, const ScanSpec &scan, double value);

}  // namespace xorsim

#endif
