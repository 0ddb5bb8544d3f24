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

#include "xorsim/fit.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xorsim/elements.h"

namespace xorsim {

namespace {

constexpr double kParameterTolerance = 1e-9;
constexpr int kMaxIterations = 500;

double model(const Eigen::Vector4d &p, double x, double sign) {
    double u = (x - p[3]) / p[2];
    return p[0] + sign * p[1] * std::exp(-0.5 * u * u);
}

double sum_squares(const Eigen::Vector4d &p, std::span<const double> x, std::span<const double> y, double sign) {
    double s = 0;
    for (size_t i = 0; i < x.size(); i++) {
        double r = y[i] - model(p, x[i], sign);
        s += r * r;
    }
    return s;
}

}  // namespace

double GaussianEnvelopeFit::visibility() const {
    return baseline == 0 ? 0 : depth / baseline;
}

double gaussian_envelope(const GaussianEnvelopeFit &fit, double x, bool dip) {
    double u = (x - fit.center) / fit.width;
    return fit.baseline + (dip ? -1 : 1) * fit.depth * std::exp(-0.5 * u * u);
}

GaussianEnvelopeFit fit_gaussian_envelope(std::span<const double> x, std::span<const double> y, bool dip) {
    if (x.size() != y.size() || x.size() < 5) {
        throw std::invalid_argument("gaussian fit needs at least 5 points");
    }
    const double sign = dip ? -1 : 1;
    const size_t n = x.size();

    // Edge mean over the outer ~10% of points on each side.
    size_t edge = std::max<size_t>(1, n / 10);
    double baseline = 0;
    for (size_t i = 0; i < edge; i++) {
        baseline += y[i] + y[n - 1 - i];
    }
    baseline /= 2.0 * edge;
    size_t ext = 0;
    for (size_t i = 1; i < n; i++) {
        if (sign * (y[i] - y[ext]) > 0) {
            ext = i;
        }
    }
    double depth = sign * (y[ext] - baseline);
    GaussianEnvelopeFit out;
    out.baseline = baseline;
    out.center = x[ext];
    double span = x[n - 1] - x[0];
    if (!(std::abs(depth) > 1e-14 * std::max(1.0, std::abs(baseline)))) {
        // Flat data: no envelope to fit.
        out.depth = 0;
        out.width = span / 8;
        out.residual_norm = std::sqrt(sum_squares({baseline, 0, out.width, out.center}, x, y, sign));
        out.converged = true;
        return out;
    }
    double width = span / 8;
    for (size_t i = ext; i < n; i++) {
        if (sign * (y[i] - baseline) < depth / 2) {
            width = std::max(std::abs(x[i] - x[ext]) / std::sqrt(2 * std::log(2.0)), 1e-12);
            break;
        }
    }

    Eigen::Vector4d p(baseline, depth, width, x[ext]);
    double lambda = 1e-3;
    double cost = sum_squares(p, x, y, sign);
    for (int iter = 1; iter <= kMaxIterations; iter++) {
        out.iterations = iter;
        Eigen::MatrixXd jac(n, 4);
        Eigen::VectorXd r(n);
        for (size_t i = 0; i < n; i++) {
            double u = (x[i] - p[3]) / p[2];
            double g = std::exp(-0.5 * u * u);
            r[i] = y[i] - model(p, x[i], sign);
            jac(i, 0) = 1;
            jac(i, 1) = sign * g;
            jac(i, 2) = sign * p[1] * g * u * u / p[2];
            jac(i, 3) = sign * p[1] * g * u / p[2];
        }
        Eigen::Matrix4d jtj = jac.transpose() * jac;
        Eigen::Vector4d jtr = jac.transpose() * r;
        bool improved = false;
        Eigen::Vector4d step;
        for (int tries = 0; tries < 50 && !improved; tries++) {
            Eigen::Matrix4d a = jtj;
            a.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-30);
            step = a.ldlt().solve(jtr);
            Eigen::Vector4d trial = p + step;
            trial[2] = std::abs(trial[2]);
            double c = sum_squares(trial, x, y, sign);
            if (std::isfinite(c) && c <= cost) {
                p = trial;
                cost = c;
                lambda = std::max(lambda / 3, 1e-12);
                improved = true;
            } else {
                lambda *= 4;
            }
        }
        double scale = p.cwiseAbs().maxCoeff();
        if (!improved || step.cwiseAbs().maxCoeff() <= kParameterTolerance * std::max(scale, 1e-300)) {
            out.converged = true;
            break;
        }
    }
    out.baseline = p[0];
    out.depth = p[1];
    out.width = std::abs(p[2]);
    out.center = p[3];
    out.residual_norm = std::sqrt(cost);
    return out;
}

double CosineSquaredFit::operator()(double theta_deg) const {
    double c = std::cos(degrees_to_radians(theta_deg - peak_deg));
    return amplitude * c * c + offset;
}

CosineSquaredFit fit_cos_squared(std::span<const double> theta_deg, std::span<const double> y) {
    if (theta_deg.size() != y.size() || y.size() < 3) {
        throw std::invalid_argument("cos^2 fit needs at least 3 points");
    }
    Eigen::MatrixXd a(y.size(), 3);
    Eigen::VectorXd b(y.size());
    for (size_t i = 0; i < y.size(); i++) {
        double t = 2 * degrees_to_radians(theta_deg[i]);
        a(i, 0) = 1;
        a(i, 1) = std::cos(t);
        a(i, 2) = std::sin(t);
        b[i] = y[i];
    }
    Eigen::Vector3d c = a.colPivHouseholderQr().solve(b);
    // A cos^2(t - p) + B = (B + A/2) + (A/2) cos 2p cos 2t + (A/2) sin 2p sin 2t
    CosineSquaredFit fit;
    double half = std::hypot(c[1], c[2]);
    fit.amplitude = 2 * half;
    fit.offset = c[0] - half;
    double peak = 0.5 * std::atan2(c[2], c[1]) * 180.0 / M_PI;
    fit.peak_deg = peak < 0 ? peak + 180 : peak;
    fit.residual_norm = (a * c - b).norm();
    return fit;
}

}  // namespace xorsim
