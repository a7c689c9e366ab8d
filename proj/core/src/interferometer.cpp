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

#include "mixphase/interferometer.hpp"

#include <cmath>

namespace mixphase::interferometer {

namespace {

void require_spin_dims(const UnitaryMatrix& u, const DensityMatrix& rho, const char* where) {
    if (u.dim() != 2 || rho.dim() != 2) {
        throw DimensionError(std::string(where) + ": spin operators must be 2x2");
    }
}

}  // namespace

UnitaryMatrix hadamard() {
    ComplexMatrix m(2, 2);
    m << 1.0, 1.0, 1.0, -1.0;
    return UnitaryMatrix(m / std::sqrt(2.0));
}

UnitaryMatrix not_gate() {
    return UnitaryMatrix(pauli_x());
}

UnitaryMatrix controlled_block(double chi, const UnitaryMatrix& u_spin) {
    if (u_spin.dim() != 2) {
        throw DimensionError("controlled_block: u_spin must be 2x2");
    }
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m.block(0, 0, 2, 2) = std::exp(kI * chi) * identity_matrix(2);
    m.block(2, 2, 2, 2) = u_spin.matrix();
    return UnitaryMatrix(m);
}

InterferometerResult run_interferometer(const CircuitSpec& spec) {
    require_spin_dims(spec.u_spin, spec.rho_spin_in, "run_interferometer");
    const UnitaryMatrix path_h = tensor(hadamard(), UnitaryMatrix::identity(2));
    const UnitaryMatrix path_m = tensor(not_gate(), UnitaryMatrix::identity(2));
    const UnitaryMatrix total = path_h * path_m * controlled_block(spec.chi, spec.u_spin) * path_h;

    const DensityMatrix rho_in(tensor(projector(2, 0), spec.rho_spin_in.matrix()));
    DensityMatrix rho_out = conjugate(total, rho_in);
    const double intensity = partial_trace_spin(rho_out, 0).probability;
    return {std::move(rho_out), intensity};
}

TracePolar trace_polar(const UnitaryMatrix& u_spin, const DensityMatrix& rho_spin) {
    require_spin_dims(u_spin, rho_spin, "trace_polar");
    const Complex z = (u_spin.matrix() * rho_spin.matrix()).trace();
    const double mod = std::abs(z);
    if (mod < kZeroVisibility) {
        return {mod, 0.0, true};
    }
    return {mod, std::arg(z), false};
}

double analytic_intensity(double chi, const UnitaryMatrix& u_spin, const DensityMatrix& rho_spin) {
    const TracePolar tp = trace_polar(u_spin, rho_spin);
    return 0.5 * (1.0 + tp.visibility * std::cos(chi - tp.phase));
}

}  // namespace mixphase::interferometer
