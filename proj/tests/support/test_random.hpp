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

// Random states and unitaries for property tests. Independent of the library
// code paths under test: unitaries come from a QR of a complex Gaussian
// matrix, states from normalized W W^dagger.

#include "mixphase/qcore.hpp"

#include <Eigen/QR>

#include <random>

namespace mixphase::testing {

inline ComplexMatrix gaussian_matrix(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
    return m;
}

inline UnitaryMatrix random_unitary(std::mt19937_64& rng, Eigen::Index n) {
    Eigen::HouseholderQR<ComplexMatrix> qr(gaussian_matrix(rng, n));
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    // Fix column phases so the distribution is Haar.
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return UnitaryMatrix(q);
}

inline DensityMatrix random_density(std::mt19937_64& rng, Eigen::Index n) {
    const ComplexMatrix w = gaussian_matrix(rng, n);
    ComplexMatrix rho = w * w.adjoint();
    rho /= rho.trace();
    return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace mixphase::testing
