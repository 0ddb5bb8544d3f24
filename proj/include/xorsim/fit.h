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

#ifndef XORSIM_FIT_H
#define XORSIM_FIT_H

#include <span>

namespace xorsim {

/// baseline + sign * depth * exp(-(x - center)^2 / (2 width^2)), sign = -1 for a dip.
struct GaussianEnvelopeFit {
    double baseline = 0;
    double depth = 0;
    double width = 0;
    double center = 0;
    double residual_norm = 0;
    int iterations = 0;
    bool converged = false;

    /// depth / baseline
    double visibility() const;
};

/// Levenberg-Marquardt least squares. Initial guesses: baseline from the scan edges, center at
/// the extremum, width from the half-depth crossing.
GaussianEnvelopeFit fit_gaussian_envelope(std::span<const double> x, std::span<const double> y, bool dip);

double gaussian_envelope(const GaussianEnvelopeFit &fit, double x, bool dip);

/// amplitude * cos^2(theta - peak) + offset.
struct CosineSquaredFit {
    double amplitude = 0;
    double offset = 0;
    /// In [0, 180).
    double peak_deg = 0;
    double residual_norm = 0;

    double operator()(double theta_deg) const;
};

/// Exact linear least squares in (1, cos 2t, sin 2t).
CosineSquaredFit fit_cos_squared(std::span<const double> theta_deg, std::span<const double> y);

}  // namespace xorsim

#endif
