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

#include "xorsim/circuit_graph.h"

#include <cmath>
#include <map>
#include <set>

#include "xorsim/errors.h"

namespace xorsim {

std::vector<double> ScanSpec::points() const {
    std::vector<double> out;
    if (steps == 1) {
        out.push_back(from);
        return out;
    }
    for (int k = 0; k < steps; k++) {
        out.push_back(from + (to - from) * k / (steps - 1));
    }
    return out;
}

std::vector<SourceSpec> CircuitGraph::sources() const {
    std::vector<SourceSpec> out;
    for (const auto &s : stages) {
        if (auto *src = std::get_if<SourceStage>(&s)) {
            out.push_back(src->spec);
        }
    }
    return out;
}

std::vector<DetectorSpec> CircuitGraph::detectors() const {
    std::vector<DetectorSpec> out;
    for (const auto &s : stages) {
        if (auto *d = std::get_if<DetectorStage>(&s)) {
            out.push_back(d->detector);
        }
    }
    return out;
}

const char *circuit_error_kind_name(CircuitErrorKind kind) {
    switch (kind) {
        case CircuitErrorKind::SyntaxError:
            return "SyntaxError";
        case CircuitErrorKind::UnknownPort:
            return "UnknownPort";
        case CircuitErrorKind::DuplicatePort:
            return "DuplicatePort";
        case CircuitErrorKind::DuplicateDetector:
            return "DuplicateDetector";
        case CircuitErrorKind::UnknownDetector:
            return "UnknownDetector";
        case CircuitErrorKind::DanglingPort:
            return "DanglingPort";
        case CircuitErrorKind::StageAfterDetector:
            return "StageAfterDetector";
        case CircuitErrorKind::DelayAfterMixing:
            return "DelayAfterMixing";
        case CircuitErrorKind::UnknownScanTarget:
            return "UnknownScanTarget";
        case CircuitErrorKind::InvalidValue:
            return "InvalidValue";
    }
    return "?";
}

namespace {

std::string error_message(CircuitErrorKind kind, int line, int column, const std::string &detail) {
    std::string out = circuit_error_kind_name(kind);
    if (line > 0) {
        out += " at line " + std::to_string(line);
        if (column > 0) {
            out += ", column " + std::to_string(column);
        }
    }
    return out + ": " + detail;
}

}  // namespace

CircuitError::CircuitError(CircuitErrorKind kind, int line, int column, const std::string &detail)
    : std::runtime_error(error_message(kind, line, column, detail)),
      kind(kind),
      line(line),
      column(column),
      detail(detail) {
}

void validate_graph(const CircuitGraph &graph, const SourceLines &lines, bool require_termination) {
    std::vector<std::pair<std::string, int>> declared;
    std::set<std::string> declared_set;
    std::set<std::string> terminated;
    std::set<std::string> mixed;
    std::set<std::string> carrying;
    std::set<std::string> detector_names;

    for (size_t i = 0; i < graph.stages.size(); i++) {
        int line = i < lines.stage_lines.size() ? lines.stage_lines[i] : 0;
        auto fail = [&](CircuitErrorKind kind, const std::string &detail) {
            throw CircuitError(kind, line, 0, detail);
        };
        auto use = [&](const std::string &port) {
            if (!declared_set.contains(port)) {
                fail(CircuitErrorKind::UnknownPort, "port '" + port + "' is used before any source declares it");
            }
            if (terminated.contains(port)) {
                fail(CircuitErrorKind::StageAfterDetector, "port '" + port + "' already ends in a detector");
            }
        };
        auto finite = [&](double x, const char *what) {
            if (!std::isfinite(x)) {
                fail(CircuitErrorKind::InvalidValue, std::string(what) + " must be finite");
            }
        };

        const Stage &stage = graph.stages[i];
        if (auto *s = std::get_if<SourceStage>(&stage)) {
            try {
                s->spec.validate();
            } catch (const InvalidSpec &e) {
                fail(CircuitErrorKind::InvalidValue, e.what());
            }
            for (const auto &port : s->spec.ports) {
                if (!declared_set.insert(port).second) {
                    fail(CircuitErrorKind::DuplicatePort, "port '" + port + "' is declared twice");
                }
                declared.emplace_back(port, line);
                if (s->spec.kind != SourceKind::Vacuum) {
                    carrying.insert(port);
                }
            }
        } else if (auto *h = std::get_if<HwpStage>(&stage)) {
            use(h->port);
            finite(h->plate_angle_deg, "wave plate angle");
        } else if (auto *r = std::get_if<RotateStage>(&stage)) {
            use(r->port);
            finite(r->angle_deg, "rotation angle");
        } else if (auto *p = std::get_if<PbsStage>(&stage)) {
            use(p->port_a);
            use(p->port_b);
            if (p->port_a == p->port_b) {
                fail(CircuitErrorKind::InvalidValue, "pbs needs two distinct ports");
            }
            mixed.insert(p->port_a);
            mixed.insert(p->port_b);
            if (carrying.contains(p->port_a) || carrying.contains(p->port_b)) {
                carrying.insert(p->port_a);
                carrying.insert(p->port_b);
            }
        } else if (auto *a = std::get_if<AnalyzerStage>(&stage)) {
            use(a->port);
            finite(a->angle_deg, "analyzer angle");
        } else if (auto *d = std::get_if<DelayStage>(&stage)) {
            use(d->port);
            finite(d->time, "delay");
            if (mixed.contains(d->port)) {
                fail(CircuitErrorKind::DelayAfterMixing, "delay on '" + d->port + "' follows a pbs on that port");
            }
        } else if (auto *det = std::get_if<DetectorStage>(&stage)) {
            const DetectorSpec &spec = det->detector;
            if (!detector_names.insert(spec.name).second) {
                fail(CircuitErrorKind::DuplicateDetector, "detector '" + spec.name + "' is declared twice");
            }
            if (declared_set.contains(spec.port) && terminated.contains(spec.port)) {
                fail(CircuitErrorKind::DuplicateDetector, "port '" + spec.port + "' already has a detector");
            }
            use(spec.port);
            if (!(spec.efficiency >= 0 && spec.efficiency <= 1)) {
                fail(CircuitErrorKind::InvalidValue, "detector efficiency must lie in [0, 1]");
            }
            terminated.insert(spec.port);
        }
    }

    std::set<std::string> outputs;
    for (size_t k = 0; k < graph.outputs.size(); k++) {
        const auto &port = graph.outputs[k];
        int line = k < lines.output_lines.size() ? lines.output_lines[k] : 0;
        if (!declared_set.contains(port)) {
            throw CircuitError(CircuitErrorKind::UnknownPort, line, 0, "output port '" + port + "' is not declared");
        }
        if (terminated.contains(port)) {
            throw CircuitError(CircuitErrorKind::InvalidValue, line, 0, "output port '" + port + "' ends in a detector");
        }
        if (!outputs.insert(port).second) {
            throw CircuitError(CircuitErrorKind::InvalidValue, line, 0, "output port '" + port + "' listed twice");
        }
    }

    for (const auto &[name, value] : graph.coincidence.required) {
        if (!detector_names.contains(name)) {
            throw CircuitError(
                CircuitErrorKind::UnknownDetector, lines.postselect_line, 0, "postselect names unknown detector '" + name + "'");
        }
        if (value < 0) {
            throw CircuitError(CircuitErrorKind::InvalidValue, lines.postselect_line, 0, "required count must be >= 0");
        }
    }

    if (graph.scan) {
        const ScanSpec &scan = *graph.scan;
        bool found = false;
        for (const auto &s : graph.stages) {
            if (scan.kind == ScanKind::Delay) {
                auto *d = std::get_if<DelayStage>(&s);
                found |= d && d->port == scan.port;
            } else {
                auto *a = std::get_if<AnalyzerStage>(&s);
                found |= a && a->port == scan.port;
            }
        }
        if (!found) {
            throw CircuitError(
                CircuitErrorKind::UnknownScanTarget, lines.scan_line, 0, "scan target on port '" + scan.port + "' does not exist");
        }
        if (scan.steps < 1 || !std::isfinite(scan.from) || !std::isfinite(scan.to)) {
            throw CircuitError(CircuitErrorKind::InvalidValue, lines.scan_line, 0, "scan needs finite bounds and steps >= 1");
        }
    }

    if (!require_termination) {
        return;
    }
    for (const auto &[port, line] : declared) {
        if (carrying.contains(port) && !terminated.contains(port) && !outputs.contains(port)) {
            throw CircuitError(
                CircuitErrorKind::DanglingPort, line, 0, "port '" + port + "' carries photons but has no detector or output");
        }
    }
}

AnalyzerStage *find_analyzer(CircuitGraph &graph, const std::string &port) {
    AnalyzerStage *found = nullptr;
    for (auto &s : graph.stages) {
        if (auto *a = std::get_if<AnalyzerStage>(&s); a && a->port == port) {
            found = a;
        }
    }
    return found;
}

DelayStage *find_delay(CircuitGraph &graph, const std::string &port) {
    DelayStage *found = nullptr;
    for (auto &s : graph.stages) {
        if (auto *d = std::get_if<DelayStage>(&s); d && d->port == port) {
            found = d;
        }
    }
    return found;
}

CircuitGraph with_scan_value(const CircuitGraph &graph, const ScanSpec &scan, double value) {
    CircuitGraph g = graph;
    if (scan.kind == ScanKind::Delay) {
        DelayStage *d = find_delay(g, scan.port);
        if (!d) {
            throw CircuitError(CircuitErrorKind::UnknownScanTarget, 0, 0, "no delay on port '" + scan.port + "'");
        }
        d->time = value;
    } else {
        AnalyzerStage *a = find_analyzer(g, scan.port);
        if (!a) {
            throw CircuitError(CircuitErrorKind::UnknownScanTarget, 0, 0, "no analyzer on port '" + scan.port + "'");
        }
        a->angle_deg = value;
    }
    return g;
}

}  // namespace xorsim
