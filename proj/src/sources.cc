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

#include "xorsim/sources.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "xorsim/errors.h"

namespace xorsim {

SourceSpec SourceSpec::vacuum(std::string port) {
    SourceSpec s;
    s.kind = SourceKind::Vacuum;
    s.ports = {std::move(port)};
    s.wavepackets = {PhotonWavepacket{}};
    return s;
}

SourceSpec SourceSpec::ideal(std::string port, double angle_deg, PhotonWavepacket wavepacket) {
    SourceSpec s;
    s.kind = SourceKind::Ideal;
    s.ports = {std::move(port)};
    s.angle_deg = angle_deg;
    s.wavepackets = {std::move(wavepacket)};
    return s;
}

SourceSpec SourceSpec::spdc_pair(
    std::string port1, std::string port2, double pair_prob, PhotonWavepacket w1, PhotonWavepacket w2) {
    SourceSpec s;
    s.kind = SourceKind::SpdcPair;
    s.ports = {std::move(port1), std::move(port2)};
    s.pair_prob = pair_prob;
    s.wavepackets = {std::move(w1), std::move(w2)};
    return s;
}

SourceSpec SourceSpec::coherent(std::string port, double mean_photons, PhotonWavepacket wavepacket) {
    SourceSpec s;
    s.kind = SourceKind::Coherent;
    s.ports = {std::move(port)};
    s.mean_photons = mean_photons;
    s.wavepackets = {std::move(wavepacket)};
    return s;
}

void SourceSpec::validate() const {
    size_t want_ports = kind == SourceKind::SpdcPair ? 2 : 1;
    if (ports.size() != want_ports || wavepackets.size() != want_ports) {
        throw InvalidSpec("source has the wrong number of ports or wavepackets");
    }
    if (kind == SourceKind::SpdcPair && ports[0] == ports[1]) {
        throw InvalidSpec("down-conversion arms must use distinct ports");
    }
    if (!(pair_prob >= 0 && pair_prob <= kMaxPairProb)) {
        throw InvalidSpec("pair probability must lie in [0, 0.1]");
    }
    if (!(mean_photons >= 0 && mean_photons <= kMaxMeanPhotons)) {
        throw InvalidSpec("mean photon number must lie in [0, 0.5]");
    }
    for (const auto &w : wavepackets) {
        if (!(w.width_sigma > 0) || !std::isfinite(w.center_time)) {
            throw InvalidSpec("wavepacket width must be positive and its center finite");
        }
    }
}

namespace {

EmissionEvent event_of(const SourceSpec &s, int copies_per_port, double probability) {
    EmissionEvent e;
    e.probability = probability;
    for (size_t k = 0; k < s.ports.size(); k++) {
        for (int c = 0; c < copies_per_port; c++) {
            e.photons.push_back({s.ports[k], s.angle_deg, s.wavepackets[k]});
        }
    }
    e.photons_per_source = {static_cast<int>(e.photons.size())};
    return e;
}

}  // namespace

std::vector<EmissionEvent> emission_distribution(const SourceSpec &s) {
    s.validate();
    switch (s.kind) {
        case SourceKind::Vacuum:
            return {event_of(s, 0, 1.0)};
        case SourceKind::Ideal:
            return {event_of(s, 1, 1.0)};
        case SourceKind::SpdcPair: {
            double p = s.pair_prob;
            double w[3] = {1 - p - p * p, p, p * p};
            double z = w[0] + w[1] + w[2];
            std::vector<EmissionEvent> out;
            for (int n = 0; n < 3; n++) {
                if (w[n] > 0) {
                    out.push_back(event_of(s, n, w[n] / z));
                }
            }
            return out;
        }
        case SourceKind::Coherent: {
            double mu = s.mean_photons;
            double w[3] = {std::exp(-mu), mu * std::exp(-mu), mu * mu / 2 * std::exp(-mu)};
            double z = w[0] + w[1] + w[2];
            std::vector<EmissionEvent> out;
            for (int n = 0; n < 3; n++) {
                if (w[n] > 0) {
                    out.push_back(event_of(s, n, w[n] / z));
                }
            }
            return out;
        }
    }
    throw InvalidSpec("unknown source kind");
}

std::vector<EmissionEvent> joint_emission(const std::vector<SourceSpec> &sources) {
    std::set<std::string> seen;
    for (const auto &s : sources) {
        for (const auto &port : s.ports) {
            if (!seen.insert(port).second) {
                throw PortCollision("two sources emit into port '" + port + "'");
            }
        }
    }
    std::vector<EmissionEvent> joint = {EmissionEvent{{}, 1.0, {}}};
    for (const auto &s : sources) {
        std::vector<EmissionEvent> next;
        for (const auto &a : joint) {
            for (const auto &b : emission_distribution(s)) {
                double prob = a.probability * b.probability;
                if (prob < kJointProbabilityFloor) {
                    continue;
                }
                EmissionEvent e = a;
                e.probability = prob;
                e.photons.insert(e.photons.end(), b.photons.begin(), b.photons.end());
                e.photons_per_source.push_back(static_cast<int>(b.photons.size()));
                next.push_back(std::move(e));
            }
        }
        joint = std::move(next);
    }
    return joint;
}

double error_to_valid_ratio(
    const SourceSpec &pair_source,
    const SourceSpec &coherent_source,
    const DetectorReach &reach,
    const std::string &trigger_detector) {
    if (pair_source.kind != SourceKind::SpdcPair || coherent_source.kind != SourceKind::Coherent) {
        throw InvalidSpec("error ratio needs a pair source and a coherent source");
    }
    if (pair_source.ports == coherent_source.ports ||
        std::find(pair_source.ports.begin(), pair_source.ports.end(), coherent_source.ports.at(0)) != pair_source.ports.end()) {
        throw PortCollision("pair and coherent sources share a port");
    }
    // Product of the two marginals, unpruned: error events sit far below the joint-event floor at small p, mu.
    double error = 0;
    double valid = 0;
    for (const auto &pe : emission_distribution(pair_source)) {
        bool can_trigger = std::any_of(pe.photons.begin(), pe.photons.end(), [&](const EmittedPhoton &ph) {
            return reach(ph.port, trigger_detector);
        });
        for (const auto &ce : emission_distribution(coherent_source)) {
            double prob = pe.probability * ce.probability;
            if (pe.photons.size() == 2 && ce.photons.size() == 1) {
                valid += prob;
            } else if (can_trigger && ce.photons.size() == 2) {
                error += prob;
            }
        }
    }
    if (error == 0) {
        return 0;
    }
    if (valid <= 0) {
        throw NumericError("no valid three-photon events at these source parameters");
    }
    return error / valid;
}

double error_to_valid_ratio(double pair_prob, double mean_photons) {
    PhotonWavepacket pw{0, 1, "spdc"};
    PhotonWavepacket cw{0, 1, "laser"};
    auto pair = SourceSpec::spdc_pair("q1", "q2", pair_prob, pw, pw);
    auto pulse = SourceSpec::coherent("q3", mean_photons, cw);
    // q1 and q2 meet at the first gate, so both reach every detector; q3 enters at the second gate.
    auto reach = [](const std::string &port, const std::string &detector) {
        return port != "q3" || detector != "D1";
    };
    return error_to_valid_ratio(pair, pulse, reach, "D1");
}

double mean_photons_for_error_ratio(double pair_prob, double target_ratio) {
    double lo = 0;
    double hi = kMaxMeanPhotons;
    if (target_ratio < 0 || error_to_valid_ratio(pair_prob, hi) < target_ratio) {
        throw NotBracketed("target error ratio is outside the reachable range");
    }
    for (int iter = 0; iter < 100 && hi - lo > 1e-14; iter++) {
        double mid = 0.5 * (lo + hi);
        if (error_to_valid_ratio(pair_prob, mid) < target_ratio) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

EventSampler::EventSampler(const std::vector<EmissionEvent> &events) {
    double total = 0;
    for (const auto &e : events) {
        total += e.probability;
        cumulative_.push_back(total);
    }
    if (cumulative_.empty() || total <= 0) {
        throw InvalidSpec("cannot sample from an empty event list");
    }
    for (auto &c : cumulative_) {
        c /= total;
    }
}

size_t EventSampler::sample(std::mt19937_64 &rng) const {
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min(static_cast<size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
}

}  // namespace xorsim
