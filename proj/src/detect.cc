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

#include "xorsim/detect.h"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "xorsim/errors.h"

namespace xorsim {

namespace {

constexpr double kImpossible = 1e-14;
constexpr double kLostFloor = 1e-12;

double binomial(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
    }
    return r;
}

/// P(outcome | n photons) for one detector.
std::vector<std::pair<int, double>> response(const DetectorSpec &d, int n) {
    double eta = d.efficiency;
    std::vector<std::pair<int, double>> out;
    if (d.mode == DetectorMode::Threshold) {
        double miss = std::pow(1 - eta, n);
        if (miss > 0) {
            out.emplace_back(0, miss);
        }
        if (1 - miss > 0) {
            out.emplace_back(1, 1 - miss);
        }
    } else {
        for (int k = 0; k <= n; k++) {
            double p = binomial(n, k) * std::pow(eta, k) * std::pow(1 - eta, n - k);
            if (p > 0) {
                out.emplace_back(k, p);
            }
        }
    }
    return out;
}

}  // namespace

std::string DetectionPattern::str(const std::vector<DetectorSpec> &detectors) const {
    if (lost) {
        return "lost";
    }
    std::string out;
    for (size_t k = 0; k < outcomes.size(); k++) {
        if (k) {
            out += "|";
        }
        out += (k < detectors.size() ? detectors[k].name : "?") + "=" + std::to_string(outcomes[k]);
    }
    return out;
}

void Ensemble::add(double weight, StateVector state) {
    for (auto &[w, s] : components) {
        if (std::abs(std::abs(inner_product(s, state)) - 1) <= 1e-12) {
            w += weight;
            return;
        }
    }
    components.emplace_back(weight, std::move(state));
}

bool Ensemble::is_pure(double tolerance) const {
    return components.size() == 1 && std::abs(components[0].first - 1) <= tolerance;
}

StateVector Ensemble::pure() const {
    if (components.size() != 1) {
        throw std::logic_error("residual is a mixture of " + std::to_string(components.size()) + " states");
    }
    return components[0].second;
}

std::string Ensemble::str() const {
    auto ket_line = [](const StateVector &s) {
        std::string out;
        for (const auto &[pattern, amp] : s.terms()) {
            if (!out.empty()) {
                out += " + ";
            }
            out += format_amplitude(amp) + pattern.str();
        }
        return out;
    };
    if (components.size() == 1) {
        return ket_line(components[0].second);
    }
    std::string out;
    for (const auto &[w, s] : components) {
        if (!out.empty()) {
            out += " ; ";
        }
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.12g*", w);
        out += buf + std::string("[") + ket_line(s) + "]";
    }
    return out;
}

std::vector<Outcome> outcome_distribution(
    const StateVector &state, const std::vector<DetectorSpec> &detectors, const std::set<std::string> &traced_ports) {
    std::map<std::string, size_t> detector_of_port;
    for (size_t k = 0; k < detectors.size(); k++) {
        const auto &d = detectors[k];
        if (!(d.efficiency >= 0 && d.efficiency <= 1)) {
            throw std::invalid_argument("detector efficiency must lie in [0, 1]");
        }
        if (!detector_of_port.emplace(d.port, k).second) {
            throw std::invalid_argument("two detectors on port '" + d.port + "'");
        }
    }

    // counts -> environment configuration -> residual terms
    std::map<std::vector<int>, std::map<OccupationPattern, StateVector::Terms>> groups;
    for (const auto &[pattern, amp] : state.terms()) {
        std::vector<int> counts(detectors.size(), 0);
        std::vector<OccupationPattern::Entry> env;
        std::vector<OccupationPattern::Entry> rest;
        for (const auto &entry : pattern.entries()) {
            auto it = detector_of_port.find(entry.first.port);
            if (it != detector_of_port.end()) {
                counts[it->second] += entry.second;
                env.push_back(entry);
            } else if (traced_ports.contains(entry.first.port)) {
                env.push_back(entry);
            } else {
                rest.push_back(entry);
            }
        }
        groups[counts][OccupationPattern(std::move(env))][OccupationPattern(std::move(rest))] += amp;
    }

    std::map<DetectionPattern, Outcome> by_pattern;
    for (const auto &[counts, envs] : groups) {
        // Enumerate outcome vectors with their conditional probabilities.
        std::vector<std::pair<std::vector<int>, double>> outcomes = {{{}, 1.0}};
        for (size_t k = 0; k < detectors.size(); k++) {
            std::vector<std::pair<std::vector<int>, double>> next;
            for (const auto &[prefix, p] : outcomes) {
                for (const auto &[value, q] : response(detectors[k], counts[k])) {
                    auto v = prefix;
                    v.push_back(value);
                    next.emplace_back(std::move(v), p * q);
                }
            }
            outcomes = std::move(next);
        }
        for (const auto &[_, terms] : envs) {
            StateVector component(terms, state.prune_epsilon());
            double weight = component.norm_squared();
            if (weight <= 0) {
                continue;
            }
            StateVector unit = component.scaled(1 / std::sqrt(weight));
            for (const auto &[values, p] : outcomes) {
                DetectionPattern key{values, false};
                Outcome &o = by_pattern[key];
                o.pattern = key;
                o.probability += p * weight;
                o.residual.add(p * weight, unit);
            }
        }
    }

    std::vector<Outcome> result;
    double total = 0;
    for (auto &[_, o] : by_pattern) {
        if (o.probability > 0) {
            for (auto &c : o.residual.components) {
                c.first /= o.probability;
            }
        }
        total += o.probability;
        result.push_back(std::move(o));
    }
    double lost = 1 - total;
    if (lost > kLostFloor) {
        result.push_back({DetectionPattern::lost_pattern(), lost, {}});
    }
    return result;
}

Conditional postselect(
    const StateVector &state,
    const std::vector<DetectorSpec> &detectors,
    const DetectionPattern &pattern,
    const std::set<std::string> &traced_ports) {
    for (auto &o : outcome_distribution(state, detectors, traced_ports)) {
        if (o.pattern == pattern) {
            if (o.probability < kImpossible) {
                break;
            }
            return {std::move(o.residual), o.probability};
        }
    }
    throw ImpossiblePattern("detection pattern " + pattern.str(detectors) + " cannot occur");
}

bool CoincidenceSpec::accepts(const DetectionPattern &pattern, const std::vector<DetectorSpec> &detectors) const {
    if (pattern.lost) {
        return false;
    }
    for (const auto &[name, value] : required) {
        bool found = false;
        for (size_t k = 0; k < detectors.size(); k++) {
            if (detectors[k].name == name) {
                found = true;
                if (pattern.outcomes.at(k) != value) {
                    return false;
                }
            }
        }
        if (!found) {
            throw std::invalid_argument("coincidence refers to unknown detector '" + name + "'");
        }
    }
    return true;
}

double fidelity(const Ensemble &ensemble, const StateVector &target) {
    double f = 0;
    for (const auto &[w, s] : ensemble.components) {
        f += w * std::norm(inner_product(target, s));
    }
    return f;
}

Eigen::Matrix2cd polarization_density(const Ensemble &ensemble, const std::string &port) {
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (const auto &[w, s] : ensemble.components) {
        // Group amplitudes by temporal index; the photon's temporal mode is traced out.
        std::map<int, Eigen::Vector2cd> by_time;
        for (const auto &[pattern, amp] : s.terms()) {
            if (pattern.entries().size() != 1 || pattern.entries()[0].second != 1 ||
                pattern.entries()[0].first.port != port) {
                throw std::invalid_argument("residual is not a single photon on port '" + port + "'");
            }
            const ModeLabel &m = pattern.entries()[0].first;
            auto [it, _] = by_time.try_emplace(m.temporal, Eigen::Vector2cd::Zero());
            it->second(m.polarization) += amp;
        }
        for (const auto &[_, v] : by_time) {
            rho += w * v * v.adjoint();
        }
    }
    return rho;
}

}  // namespace xorsim
