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

#ifndef XORSIM_FOCK_H
#define XORSIM_FOCK_H

#include <compare>
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace xorsim {

using Amplitude = std::complex<double>;

/// A spatial port together with a polarization index (0 = horizontal = logical 0, 1 = vertical).
struct Channel {
    std::string port;
    int polarization = 0;

    auto operator<=>(const Channel &) const = default;
};

/// One bosonic mode: spatial port x polarization x temporal-mode index.
struct ModeLabel {
    std::string port;
    int polarization = 0;
    int temporal = 0;

    ModeLabel() = default;
    ModeLabel(std::string port, int polarization, int temporal = 0);

    Channel channel() const {
        return {port, polarization};
    }
    std::string str() const;

    auto operator<=>(const ModeLabel &) const = default;
};

/// Sorted (mode, count) list with strictly positive counts. Serves as the Fock basis key.
class OccupationPattern {
   public:
    using Entry = std::pair<ModeLabel, int>;

    OccupationPattern() = default;
    /// Canonicalizes: sorts by mode, merges duplicates, drops zero counts.
    explicit OccupationPattern(std::vector<Entry> entries);

    const std::vector<Entry> &entries() const {
        return entries_;
    }
    int count(const ModeLabel &mode) const;
    int total_photons() const;
    bool is_vacuum() const {
        return entries_.empty();
    }

    OccupationPattern with_added(const ModeLabel &mode, int delta) const;
    /// Entries for which `keep` is true.
    OccupationPattern filtered(const std::function<bool(const ModeLabel &)> &keep) const;
    OccupationPattern merged(const OccupationPattern &other) const;

    std::string str() const;

    auto operator<=>(const OccupationPattern &) const = default;

   private:
    std::vector<Entry> entries_;
};

/// Sparse superposition over occupation patterns.
///
/// Values are immutable once built; every operation returns a new state. Terms whose amplitude
/// magnitude falls below the pruning epsilon are dropped on construction.
class StateVector {
   public:
    using Terms = std::map<OccupationPattern, Amplitude>;
    static constexpr double kDefaultPruneEpsilon = 1e-14;

    /// The zero vector.
    StateVector() = default;
    explicit StateVector(Terms terms, double prune_epsilon = kDefaultPruneEpsilon);

    static StateVector vacuum(double prune_epsilon = kDefaultPruneEpsilon);
    static StateVector basis(const OccupationPattern &pattern, Amplitude amplitude = 1.0);

    const Terms &terms() const {
        return terms_;
    }
    bool is_zero() const {
        return terms_.empty();
    }
    double prune_epsilon() const {
        return prune_epsilon_;
    }
    Amplitude amplitude(const OccupationPattern &pattern) const;
    double norm_squared() const;

    StateVector scaled(Amplitude factor) const;
    StateVector with_prune_epsilon(double prune_epsilon) const;

    /// Debug form: one line per term, `(re,im) |n@port:pol:t, ...⟩`, in canonical order.
    std::string str() const;

    friend StateVector operator+(const StateVector &a, const StateVector &b);
    friend StateVector operator-(const StateVector &a, const StateVector &b);

   private:
    Terms terms_;
    double prune_epsilon_ = kDefaultPruneEpsilon;
};

/// Applies the creation operator of `mode`: |n> -> sqrt(n+1) |n+1>.
StateVector create_photon(const StateVector &state, const ModeLabel &mode);

/// <a|b>.
Amplitude inner_product(const StateVector &a, const StateVector &b);

struct NormalizedState {
    StateVector state;
    double norm;
};

/// Throws ZeroNorm when the norm is at or below kNormFloor.
NormalizedState normalize(const StateVector &state);
constexpr double kNormFloor = 1e-300;

/// Product of two states; occupation counts on shared modes are added.
StateVector tensor(const StateVector &a, const StateVector &b);

/// Keeps only the terms whose pattern satisfies `keep`.
StateVector select_terms(const StateVector &state, const std::function<bool(const OccupationPattern &)> &keep);

std::string format_amplitude(Amplitude amplitude);

}  // namespace xorsim

#endif
