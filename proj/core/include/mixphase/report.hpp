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

#include "mixphase/fringe_fit.hpp"
#include "mixphase/harness.hpp"

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace mixphase::harness {

/// Decimal rendering with 12 significant digits.
[[nodiscard]] std::string format_number(double v);

/// Header "chi_deg,intensity", then one row per point.
void write_pattern_csv(std::ostream& os, const InterferencePattern& pattern);

/// Header "r,fitted,theory,abs_err", then one row per purity.
void write_curve_csv(std::ostream& os, const std::vector<CurveRow>& rows);

/// Pattern markers with an optional theory curve drawn as a line.
void write_pattern_svg(std::ostream& os, const InterferencePattern& pattern,
                       const std::function<double(double)>& theory, const std::string& title);

/// Fitted values as markers over the theory column as a line, against r.
void write_curve_svg(std::ostream& os, const std::vector<CurveRow>& rows, const std::string& title,
                     const std::string& y_label);

}  // namespace mixphase::harness
