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

#include "mixphase/qcore.hpp"

namespace mixphase::interferometer {

/// Below this modulus Tr(U rho) carries no usable phase.
inline constexpr double kZeroVisibility = 1e-14;

struct CircuitSpec {
    double chi;  ///< phase-shifter angle, radians
    UnitaryMatrix u_spin;
    DensityMatrix rho_spin_in;
};

/// Beam splitter, (1/sqrt 2)[[1, 1], [1, -1]].
[[nodiscard]] UnitaryMatrix hadamard();

/// Mirror, [[0, 1], [1, 0]].
[[nodiscard]] UnitaryMatrix not_gate();

/// U_C = |1><1| (x) U + e^{i chi} |0><0| (x) 1, assembled as one 4x4 block
/// matrix. Throws DimensionError unless `u_spin` is 2x2.
[[nodiscard]] UnitaryMatrix controlled_block(double chi, const UnitaryMatrix& u_spin);

struct InterferometerResult {
    DensityMatrix rho_out;
    double intensity;  ///< detection probability on the horizontal path |0>
};

/// Evolves |0><0| (x) rho_spin_in through U_H U_M U_C U_H.
[[nodiscard]] InterferometerResult run_interferometer(const CircuitSpec& spec);

/// Polar form of Tr(U rho). `phase` is reported as 0 with `zero_visibility`
/// set when the modulus is below kZeroVisibility.
struct TracePolar {
    double visibility;
    double phase;
    bool zero_visibility;
};

[[nodiscard]] TracePolar trace_polar(const UnitaryMatrix& u_spin, const DensityMatrix& rho_spin);

/// Closed-form fringe, (1 + |Tr(U rho)| cos(chi - arg Tr(U rho))) / 2.
[[nodiscard]] double analytic_intensity(double chi, const UnitaryMatrix& u_spin,
                                        const DensityMatrix& rho_spin);

}  // namespace mixphase::interferometer
