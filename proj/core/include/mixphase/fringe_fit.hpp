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

#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace mixphase::harness {

struct PatternPoint {
    double chi_deg;
    double intensity;

    friend bool operator==(const PatternPoint&, const PatternPoint&) = default;
};

inline constexpr double kIntensitySlack = 1e-9;

/// Sampled fringe I(chi). Intensities must lie in [0, 1] up to kIntensitySlack.
class InterferencePattern {
  public:
    InterferencePattern() = default;
    explicit InterferencePattern(std::vector<PatternPoint> points);

    [[nodiscard]] const std::vector<PatternPoint>& points() const noexcept { return points_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }

    /// Points with lo <= chi <= hi.
    [[nodiscard]] InterferencePattern window(double lo_deg, double hi_deg) const;

  private:
    std::vector<PatternPoint> points_;
};

struct FringeFit {
    double visibility;    ///< sqrt(b^2 + c^2) / a0
    double shift_deg;     ///< atan2(c, b), in (-180, 180]
    double offset;        ///< a0
    double residual_rms;
};

class FitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Linear least squares of I ~ a0 + b cos(chi) + c sin(chi).
/// Throws FitError for fewer than three points, a rank-deficient grid or a
/// non-positive offset.
[[nodiscard]] FringeFit fit_fringe(std::span<const PatternPoint> points);
[[nodiscard]] inline FringeFit fit_fringe(const InterferencePattern& pattern) {
    return fit_fringe(pattern.points());
}

/// Wraps an angle in degrees to (-180, 180].
[[nodiscard]] double wrap_deg(double deg);

/// The representative of `deg` modulo 360 closest to `reference`.
[[nodiscard]] double unwrap_near(double deg, double reference);

}  // namespace mixphase::harness
