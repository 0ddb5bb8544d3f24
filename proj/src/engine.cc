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

#include "xorsim/engine.h"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "xorsim/elements.h"
#include "xorsim/errors.h"

namespace xorsim {

namespace {

std::string sink_name(const std::string &port, size_t stage_index) {
    return port + "~" + std::to_string(stage_index);
}

/// A graph lowered to transforms plus its emission distribution.
struct CompiledCircuit {
    std::vector<ModeTransform> transforms;
    std::vector<DetectorSpec> detectors;
    std::set<std::string> traced;
    std::vector<EmissionEvent> events;
    FamilyOverlaps families;
    CoincidenceSpec coincidence;
};

CompiledCircuit compile(const CircuitGraph &graph) {
    validate_graph(graph);
    CompiledCircuit c;
    c.families = graph.families;
    c.coincidence = graph.coincidence;
    std::map<std::string, double> delay;
    for (size_t i = 0; i < graph.stages.size(); i++) {
        const Stage &stage = graph.stages[i];
        if (auto *h = std::get_if<HwpStage>(&stage)) {
            c.transforms.push_back(half_wave_plate(h->port, h->plate_angle_deg));
        } else if (auto *r = std::get_if<RotateStage>(&stage)) {
            if (r->angle_deg != 0) {
                c.transforms.push_back(polarization_rotation(r->port, r->angle_deg));
            }
        } else if (auto *p = std::get_if<PbsStage>(&stage)) {
            c.transforms.push_back(pbs(p->port_a, p->port_b));
        } else if (auto *a = std::get_if<AnalyzerStage>(&stage)) {
            std::string sink = sink_name(a->port, i);
            c.transforms.push_back(analyzer_dilation(a->port, a->angle_deg, sink));
            c.traced.insert(sink);
        } else if (auto *d = std::get_if<DelayStage>(&stage)) {
            delay[d->port] += d->time;
        } else if (auto *det = std::get_if<DetectorStage>(&stage)) {
            c.detectors.push_back(det->detector);
        }
    }
    std::vector<SourceSpec> sources = graph.sources();
    for (auto &s : sources) {
        for (size_t k = 0; k < s.ports.size(); k++) {
            s.wavepackets[k].center_time += delay[s.ports[k]];
        }
    }
    c.events = joint_emission(sources);
    return c;
}

std::vector<Outcome> evaluate(const CompiledCircuit &c, const EmissionEvent &event) {
    StateVector state = prepare_event_state(event, c.families);
    for (const auto &t : c.transforms) {
        state = apply_transform(state, t);
    }
    return outcome_distribution(state, c.detectors, c.traced);
}

}  // namespace

std::vector<std::string> sink_ports(const CircuitGraph &graph) {
    std::vector<std::string> out;
    for (size_t i = 0; i < graph.stages.size(); i++) {
        if (auto *a = std::get_if<AnalyzerStage>(&graph.stages[i])) {
            out.push_back(sink_name(a->port, i));
        }
    }
    return out;
}

StateVector prepare_event_state(const EmissionEvent &event, const FamilyOverlaps &families) {
    std::vector<PhotonWavepacket> packets;
    for (const auto &ph : event.photons) {
        packets.push_back(ph.wavepacket);
    }
    TemporalBasis basis = build_temporal_basis(packets, families);
    StateVector::Terms state{{OccupationPattern(), 1}};
    for (size_t i = 0; i < event.photons.size(); i++) {
        const EmittedPhoton &ph = event.photons[i];
        double th = degrees_to_radians(ph.angle_deg);
        const double pol[2] = {std::cos(th), std::sin(th)};
        StateVector::Terms next;
        for (const auto &[k, coeff] : basis.expansion(static_cast<int>(i))) {
            for (int p = 0; p < 2; p++) {
                if (std::abs(pol[p]) < 1e-15) {
                    continue;
                }
                ModeLabel label(ph.port, p, k);
                for (const auto &[pattern, amp] : state) {
                    next[pattern.with_added(label, 1)] += amp * coeff * pol[p] * std::sqrt(pattern.count(label) + 1.0);
                }
            }
        }
        state = std::move(next);
    }
    return normalize(StateVector(std::move(state))).state;
}

bool detector_reachable(const CircuitGraph &graph, const std::string &port, const std::string &detector) {
    std::set<std::string> reached;
    for (const auto &stage : graph.stages) {
        if (auto *s = std::get_if<SourceStage>(&stage)) {
            for (const auto &p : s->spec.ports) {
                if (p == port) {
                    reached.insert(p);
                }
            }
        } else if (auto *p = std::get_if<PbsStage>(&stage)) {
            if (reached.contains(p->port_a) || reached.contains(p->port_b)) {
                reached.insert(p->port_a);
                reached.insert(p->port_b);
            }
        } else if (auto *d = std::get_if<DetectorStage>(&stage)) {
            if (d->detector.name == detector && reached.contains(d->detector.port)) {
                return true;
            }
        }
    }
    return false;
}

std::string csv_field(const std::string &text) {
    if (text.find_first_of(",\"\n") == std::string::npos) {
        return text;
    }
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + "\"";
}

namespace {

bool matches(const DetectionPattern &pattern, const std::vector<DetectorSpec> &detectors,
             const std::vector<std::pair<std::string, int>> &required) {
    if (pattern.lost) {
        return false;
    }
    for (const auto &[name, value] : required) {
        bool ok = false;
        for (size_t k = 0; k < detectors.size(); k++) {
            if (detectors[k].name == name) {
                ok = pattern.outcomes[k] == value;
            }
        }
        if (!ok) {
            return false;
        }
    }
    return true;
}

std::string probability_text(double p) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", p);
    return buf;
}

}  // namespace

double ResultTable::coincidence_probability() const {
    double total = 0;
    for (const auto &r : rows) {
        if (r.coincidence) {
            total += r.probability;
        }
    }
    return total;
}

double ResultTable::probability(const DetectionPattern &pattern) const {
    const ResultRow *r = find(pattern);
    return r ? r->probability : 0;
}

double ResultTable::marginal(const std::vector<std::pair<std::string, int>> &required) const {
    double total = 0;
    for (const auto &r : rows) {
        if (matches(r.pattern, detectors, required)) {
            total += r.probability;
        }
    }
    return total;
}

const ResultRow *ResultTable::find(const DetectionPattern &pattern) const {
    for (const auto &r : rows) {
        if (r.pattern == pattern) {
            return &r;
        }
    }
    return nullptr;
}

std::string ResultTable::to_csv() const {
    std::string out = "pattern,probability,output_state\n";
    for (const auto &r : rows) {
        std::string state = r.coincidence && !r.output_state.components.empty() ? r.output_state.str() : "";
        out += csv_field(r.label) + "," + probability_text(r.probability) + "," + csv_field(state) + "\n";
    }
    return out;
}

uint64_t CountTable::coincidences() const {
    uint64_t total = 0;
    for (const auto &r : rows) {
        if (r.coincidence) {
            total += r.counts;
        }
    }
    return total;
}

uint64_t CountTable::counts(const DetectionPattern &pattern) const {
    for (const auto &r : rows) {
        if (r.pattern == pattern) {
            return r.counts;
        }
    }
    return 0;
}

uint64_t CountTable::marginal(const std::vector<std::pair<std::string, int>> &required) const {
    uint64_t total = 0;
    for (const auto &r : rows) {
        if (matches(r.pattern, detectors, required)) {
            total += r.counts;
        }
    }
    return total;
}

std::string CountTable::to_csv() const {
    std::string out = "pattern,probability,counts,output_state\n";
    for (const auto &r : rows) {
        out += csv_field(r.label) + "," + probability_text(static_cast<double>(r.counts) / static_cast<double>(trials)) +
               "," + std::to_string(r.counts) + ",\n";
    }
    return out;
}

bool CountTable::operator==(const CountTable &other) const {
    if (trials != other.trials || rows.size() != other.rows.size()) {
        return false;
    }
    for (size_t k = 0; k < rows.size(); k++) {
        if (rows[k].pattern != other.rows[k].pattern || rows[k].counts != other.rows[k].counts) {
            return false;
        }
    }
    return true;
}

ResultTable run_exact(const CircuitGraph &graph) {
    CompiledCircuit c = compile(graph);
    std::map<DetectionPattern, ResultRow> rows;
    for (const auto &event : c.events) {
        for (auto &o : evaluate(c, event)) {
            ResultRow &row = rows[o.pattern];
            row.pattern = o.pattern;
            row.probability += event.probability * o.probability;
            for (auto &[w, s] : o.residual.components) {
                row.output_state.add(event.probability * o.probability * w, std::move(s));
            }
        }
    }
    ResultTable table;
    table.detectors = c.detectors;
    for (auto &[pattern, row] : rows) {
        row.label = pattern.str(c.detectors);
        row.coincidence = c.coincidence.accepts(pattern, c.detectors);
        if (row.coincidence && row.probability > 0) {
            for (auto &comp : row.output_state.components) {
                comp.first /= row.probability;
            }
        } else {
            row.output_state.components.clear();
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

CountTable run_monte_carlo(const CircuitGraph &graph, uint64_t trials, uint64_t seed, int workers) {
    if (trials == 0) {
        throw std::invalid_argument("Monte Carlo needs at least one trial");
    }
    if (workers < 1) {
        throw std::invalid_argument("Monte Carlo needs at least one worker");
    }
    const CompiledCircuit c = compile(graph);
    const EventSampler event_sampler(c.events);

    struct Cached {
        std::vector<DetectionPattern> patterns;
        std::vector<double> cumulative;
    };
    std::vector<Cached> cache(c.events.size());
    std::unique_ptr<std::once_flag[]> ready(new std::once_flag[c.events.size()]);
    auto outcomes_of = [&](size_t e) -> const Cached & {
        std::call_once(ready[e], [&] {
            double total = 0;
            for (const auto &o : evaluate(c, c.events[e])) {
                total += o.probability;
                cache[e].patterns.push_back(o.pattern);
                cache[e].cumulative.push_back(total);
            }
        });
        return cache[e];
    };

    std::vector<std::map<DetectionPattern, uint64_t>> partial(workers);
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](int w) {
        try {
            std::seed_seq seq{
                static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(w)};
            std::mt19937_64 rng(seq);
            std::uniform_real_distribution<double> uniform(0.0, 1.0);
            uint64_t share = trials / workers + (static_cast<uint64_t>(w) < trials % workers ? 1 : 0);
            for (uint64_t t = 0; t < share; t++) {
                const Cached &o = outcomes_of(event_sampler.sample(rng));
                double u = uniform(rng) * o.cumulative.back();
                size_t k = std::upper_bound(o.cumulative.begin(), o.cumulative.end(), u) - o.cumulative.begin();
                partial[w][o.patterns[std::min(k, o.patterns.size() - 1)]]++;
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; w++) {
            threads.emplace_back(work, w);
        }
        for (auto &t : threads) {
            t.join();
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    std::map<DetectionPattern, uint64_t> merged;
    for (const auto &m : partial) {
        for (const auto &[pattern, n] : m) {
            merged[pattern] += n;
        }
    }
    CountTable table;
    table.detectors = c.detectors;
    table.trials = trials;
    for (const auto &[pattern, n] : merged) {
        table.rows.push_back({pattern, pattern.str(c.detectors), n, c.coincidence.accepts(pattern, c.detectors)});
    }
    return table;
}

}  // namespace xorsim
