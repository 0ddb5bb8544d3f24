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

#ifndef XORSIM_ERRORS_H
#define XORSIM_ERRORS_H

#include <stdexcept>
#include <string>

namespace xorsim {

/// Base for numeric failures (exit code 3 in the CLI).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Normalizing a state whose norm is below the numeric floor.
struct ZeroNorm : NumericError {
    using NumericError::NumericError;
};

/// An occupied mode on a transformed port is missing from the transform's input list.
struct UnknownMode : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Overlap (Gram) matrix has an eigenvalue below -1e-9.
struct NotPSD : NumericError {
    using NumericError::NumericError;
};

struct InvalidSpec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PortCollision : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A post-selection pattern with probability below 1e-14.
struct ImpossiblePattern : NumericError {
    using NumericError::NumericError;
};

/// XOR output amplitudes that cancel, |a+d|^2 + |b+g|^2 < 1e-14.
struct VanishingOutput : NumericError {
    using NumericError::NumericError;
};

/// Calibration target lies outside the visibility range reachable on [0, 1].
struct NotBracketed : NumericError {
    using NumericError::NumericError;
};

}  // namespace xorsim

#endif
