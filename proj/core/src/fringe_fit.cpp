// Copyright 2026 The mixphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mixphase/fringe_fit.hpp"

#include "mixphase/qcore.hpp"

#include <Eigen/QR>

#include <cmath>
#include <string>

namespace mixphase::harness {

InterferencePattern::InterferencePattern(std::vector<PatternPoint> points)
    : points_(std::move(points)) {
    for (const auto& p : points_) {
        if (!std::isfinite(p.chi_deg) || !std::isfinite(p.intensity)) {
            throw std::invalid_argument("InterferencePattern: non-finite point");
        }
        if (p.intensity < -kIntensitySlack || p.intensity > 1.0 + kIntensitySlack) {
            throw std::invalid_argument("InterferencePattern: intensity " +
                                        std::to_string(p.intensity) + " outside [0, 1]");
        }
    }
}

InterferencePattern InterferencePattern::window(double lo_deg, double hi_deg) const {
    std::vector<PatternPoint> kept;
    for (const auto& p : points_) {
        if (p.chi_deg >= lo_deg && p.chi_deg <= hi_deg) {
            kept.push_back(p);
        }
    }
    return InterferencePattern(std::move(kept));
}

FringeFit fit_fringe(std::span<const PatternPoint> points) {
    const auto n = static_cast<Eigen::Index>(points.size());
    if (n < 3) {
        throw FitError("fit_fringe: need at least 3 points, got " + std::to_string(n));
    }
    Eigen::MatrixX3d design(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double chi = deg2rad(points[static_cast<std::size_t>(i)].chi_deg);
        design(i, 0) = 1.0;
        design(i, 1) = std::cos(chi);
        design(i, 2) = std::sin(chi);
        y(i) = points[static_cast<std::size_t>(i)].intensity;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixX3d> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < 3) {
        throw FitError("fit_fringe: degenerate chi grid (rank " + std::to_string(qr.rank()) + ")");
    }
    const Eigen::Vector3d coef = qr.solve(y);
    const double a0 = coef(0);
    if (!(a0 > 0.0)) {
        throw FitError("fit_fringe: non-positive offset " + std::to_string(a0));
    }
    const double rms = std::sqrt((design * coef - y).squaredNorm() / static_cast<double>(n));
    return {std::hypot(coef(1), coef(2)) / a0, rad2deg(std::atan2(coef(2), coef(1))), a0, rms};
}

double wrap_deg(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w <= -180.0) {
        w += 360.0;
    } else if (w > 180.0) {
        w -= 360.0;
    }
    return w;
}

double unwrap_near(double deg, double reference) {
    return reference + wrap_deg(deg - reference);
}

}  // namespace mixphase::harness
