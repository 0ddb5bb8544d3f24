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

#include "xorsim/fock.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "xorsim/errors.h"

namespace xorsim {

ModeLabel::ModeLabel(std::string port, int polarization, int temporal)
    : port(std::move(port)), polarization(polarization), temporal(temporal) {
    if (polarization != 0 && polarization != 1) {
        throw std::invalid_argument("polarization index must be 0 or 1, got " + std::to_string(polarization));
    }
    if (temporal < 0) {
        throw std::invalid_argument("temporal index must be nonnegative");
    }
}

std::string ModeLabel::str() const {
    return port + ":" + std::to_string(polarization) + ":" + std::to_string(temporal);
}

OccupationPattern::OccupationPattern(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &b) { return a.first < b.first; });
    for (auto &e : entries) {
        if (e.second < 0) {
            throw std::invalid_argument("negative occupation count");
        }
        if (!entries_.empty() && entries_.back().first == e.first) {
            entries_.back().second += e.second;
        } else {
            entries_.push_back(std::move(e));
        }
    }
    std::erase_if(entries_, [](const Entry &e) { return e.second == 0; });
}

int OccupationPattern::count(const ModeLabel &mode) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), mode, [](const Entry &e, const ModeLabel &m) { return e.first < m; });
    if (it != entries_.end() && it->first == mode) {
        return it->second;
    }
    return 0;
}

int OccupationPattern::total_photons() const {
    int total = 0;
    for (const auto &e : entries_) {
        total += e.second;
    }
    return total;
}

OccupationPattern OccupationPattern::with_added(const ModeLabel &mode, int delta) const {
    OccupationPattern result;
    result.entries_ = entries_;
    auto it = std::lower_bound(result.entries_.begin(), result.entries_.end(), mode, [](const Entry &e, const ModeLabel &m) {
        return e.first < m;
    });
    if (it != result.entries_.end() && it->first == mode) {
        it->second += delta;
        if (it->second < 0) {
            throw std::invalid_argument("occupation count would become negative");
        }
        if (it->second == 0) {
            result.entries_.erase(it);
        }
    } else {
        if (delta < 0) {
            throw std::invalid_argument("occupation count would become negative");
        }
        if (delta > 0) {
            result.entries_.insert(it, {mode, delta});
        }
    }
    return result;
}

OccupationPattern OccupationPattern::filtered(const std::function<bool(const ModeLabel &)> &keep) const {
    OccupationPattern result;
    for (const auto &e : entries_) {
        if (keep(e.first)) {
            result.entries_.push_back(e);
        }
    }
    return result;
}

OccupationPattern OccupationPattern::merged(const OccupationPattern &other) const {
    std::vector<Entry> all = entries_;
    all.insert(all.end(), other.entries_.begin(), other.entries_.end());
    return OccupationPattern(std::move(all));
}

std::string OccupationPattern::str() const {
    std::string out = "|";
    for (size_t k = 0; k < entries_.size(); k++) {
        if (k) {
            out += ", ";
        }
        out += std::to_string(entries_[k].second) + "@" + entries_[k].first.str();
    }
    out += "⟩";
    return out;
}

StateVector::StateVector(Terms terms, double prune_epsilon) : prune_epsilon_(prune_epsilon) {
    for (auto &[pattern, amp] : terms) {
        if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
            throw NumericError("non-finite amplitude for " + pattern.str());
        }
    }
    std::erase_if(terms, [&](const auto &kv) { return std::abs(kv.second) < prune_epsilon; });
    terms_ = std::move(terms);
}

StateVector StateVector::vacuum(double prune_epsilon) {
    return StateVector(Terms{{OccupationPattern{}, 1.0}}, prune_epsilon);
}

StateVector StateVector::basis(const OccupationPattern &pattern, Amplitude amplitude) {
    return StateVector(Terms{{pattern, amplitude}});
}

Amplitude StateVector::amplitude(const OccupationPattern &pattern) const {
    auto it = terms_.find(pattern);
    return it == terms_.end() ? Amplitude{} : it->second;
}

double StateVector::norm_squared() const {
    double total = 0;
    for (const auto &[_, amp] : terms_) {
        total += std::norm(amp);
    }
    return total;
}

StateVector StateVector::scaled(Amplitude factor) const {
    Terms out = terms_;
    for (auto &[_, amp] : out) {
        amp *= factor;
    }
    return StateVector(std::move(out), prune_epsilon_);
}

StateVector StateVector::with_prune_epsilon(double prune_epsilon) const {
    return StateVector(terms_, prune_epsilon);
}

std::string format_amplitude(Amplitude amplitude) {
    auto clean = [](double x) { return std::abs(x) < 1e-15 ? 0.0 : x; };
    char buf[64];
    std::snprintf(buf, sizeof(buf), "(%.12g,%.12g)", clean(amplitude.real()), clean(amplitude.imag()));
    return buf;
}

std::string StateVector::str() const {
    std::string out;
    for (const auto &[pattern, amp] : terms_) {
        out += format_amplitude(amp) + " " + pattern.str() + "\n";
    }
    return out;
}

StateVector operator+(const StateVector &a, const StateVector &b) {
    StateVector::Terms out = a.terms_;
    for (const auto &[pattern, amp] : b.terms_) {
        out[pattern] += amp;
    }
    return StateVector(std::move(out), std::min(a.prune_epsilon_, b.prune_epsilon_));
}

StateVector operator-(const StateVector &a, const StateVector &b) {
    return a + b.scaled(-1.0);
}

StateVector create_photon(const StateVector &state, const ModeLabel &mode) {
    StateVector::Terms out;
    for (const auto &[pattern, amp] : state.terms()) {
        int n = pattern.count(mode);
        out[pattern.with_added(mode, 1)] += amp * std::sqrt(static_cast<double>(n + 1));
    }
    return StateVector(std::move(out), state.prune_epsilon());
}

Amplitude inner_product(const StateVector &a, const StateVector &b) {
    const auto &small = a.terms().size() <= b.terms().size() ? a.terms() : b.terms();
    const auto &large = a.terms().size() <= b.terms().size() ? b.terms() : a.terms();
    bool a_is_small = &small == &a.terms();
    Amplitude total = 0;
    for (const auto &[pattern, amp] : small) {
        auto it = large.find(pattern);
        if (it == large.end()) {
            continue;
        }
        total += a_is_small ? std::conj(amp) * it->second : std::conj(it->second) * amp;
    }
    return total;
}

NormalizedState normalize(const StateVector &state) {
    double norm = std::sqrt(state.norm_squared());
    if (!(norm > kNormFloor)) {
        throw ZeroNorm("cannot normalize a state with zero norm");
    }
    return {state.scaled(1.0 / norm), norm};
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    StateVector::Terms out;
    for (const auto &[pa, xa] : a.terms()) {
        for (const auto &[pb, xb] : b.terms()) {
            out[pa.merged(pb)] += xa * xb;
        }
    }
    return StateVector(std::move(out), std::min(a.prune_epsilon(), b.prune_epsilon()));
}

StateVector select_terms(const StateVector &state, const std::function<bool(const OccupationPattern &)> &keep) {
    StateVector::Terms out;
    for (const auto &[pattern, amp] : state.terms()) {
        if (keep(pattern)) {
            out.emplace(pattern, amp);
        }
    }
    return StateVector(std::move(out), state.prune_epsilon());
}

}  // namespace xorsim
