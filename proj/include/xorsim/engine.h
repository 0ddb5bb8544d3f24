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

#ifndef XORSIM_ENGINE_H
#define XORSIM_ENGINE_H

#include <cstdint>
#include <string>
#include <vector>

#include "xorsim/circuit_graph.h"

namespace xorsim {

struct ResultRow {
    DetectionPattern pattern;
    std::string label;
    double probability = 0;
    bool coincidence = false;
    /// Conditional state of the declared outputs; filled for coincidence-passing patterns.
    Ensemble output_state;
};

/// Exact per-pattern probabilities, aggregated over every emission event.
struct ResultTable {
    std::vector<DetectorSpec> detectors;
    std::vector<ResultRow> rows;

    double coincidence_probability() const;
    /// Probability of `pattern`, 0 if it never occurs.
    double probability(const DetectionPattern &pattern) const;
    /// Summed probability of patterns where every listed detector has the given outcome.
    double marginal(const std::vector<std::pair<std::string, int>> &required) const;
    const ResultRow *find(const DetectionPattern &pattern) const;

    /// `pattern,probability,output_state`
    std::string to_csv() const;
};

struct CountRow {
    DetectionPattern pattern;
    std::string label;
    uint64_t counts = 0;
    bool coincidence = false;
};

struct CountTable {
    std::vector<DetectorSpec> detectors;
    uint64_t trials = 0;
    std::vector<CountRow> rows;

    uint64_t coincidences() const;
    uint64_t counts(const DetectionPattern &pattern) const;
    uint64_t marginal(const std::vector<std::pair<std::string, int>> &required) const;

    /// `pattern,probability,counts,output_state`; probability is counts / trials.
    std::string to_csv() const;

    bool operator==(const CountTable &other) const;
};

/// Enumerates the joint emission events, propagates each event's pure state through the stages,
/// measures every detector at the end, and weights by the event probability.
ResultTable run_exact(const CircuitGraph &graph);

/// Per trial: sample an emission event, propagate it, and sample a detection pattern. Trials are
/// split over `workers` threads, each seeded from (seed, worker index); results are identical for
/// a fixed (seed, workers). Throws std::invalid_argument when trials == 0.
CountTable run_monte_carlo(const CircuitGraph &graph, uint64_t trials, uint64_t seed, int workers = 1);

/// Ports holding analyzer-absorbed photons during propagation of `graph`.
std::vector<std::string> sink_ports(const CircuitGraph &graph);

/// Initial state of an emission event after delays: photons on their ports with temporal modes
/// from the Gram-matrix factorization, normalized.
StateVector prepare_event_state(const EmissionEvent &event, const FamilyOverlaps &families);

/// Detectors reachable from each source port, following pbs mixing downstream.
bool detector_reachable(const CircuitGraph &graph, const std::string &port, const std::string &detector);

std::string csv_field(const std::string &text);

}  // namespace xorsim

#endif
