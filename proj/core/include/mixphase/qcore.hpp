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

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

/**
 * Dense complex linear algebra and state primitives for the two-qubit
 * path/spin system.
 *
 * Basis ordering is fixed across the whole library: the path qubit is the
 * first tensor factor and the spin qubit the second, so the computational
 * basis reads |00>, |01>, |10>, |11> with index = 2 * path + spin.
 */
namespace mixphase {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kBlochTol = 1e-12;

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a matrix does not satisfy the invariants of the type it is
/// being wrapped into (Hermitian/trace/PSD, unitarity, Bloch length).
class InvalidStateError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Unit-trace, Hermitian, positive-semidefinite matrix of dimension 2 or 4.
/// The stored matrix is re-symmetrized on construction.
class DensityMatrix {
  public:
    explicit DensityMatrix(const ComplexMatrix& mat);

    [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return mat_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return mat_.rows(); }
    [[nodiscard]] Complex operator()(Eigen::Index r, Eigen::Index c) const { return mat_(r, c); }

    /// Eigenvalues in ascending order.
    [[nodiscard]] Eigen::VectorXd eigenvalues() const;
    [[nodiscard]] Eigen::VectorXd diagonal() const { return mat_.diagonal().real(); }

  private:
    ComplexMatrix mat_;
};

/// Square matrix with U U^dagger = 1 within kUnitaryTol.
class UnitaryMatrix {
  public:
    explicit UnitaryMatrix(const ComplexMatrix& mat);

    [[nodiscard]] static UnitaryMatrix identity(Eigen::Index dim);

    [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return mat_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return mat_.rows(); }
    [[nodiscard]] Complex operator()(Eigen::Index r, Eigen::Index c) const { return mat_(r, c); }
    [[nodiscard]] UnitaryMatrix adjoint() const;

    /// Operator product: (a * b) applies b first, then a.
    friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

  private:
    struct Trusted {};
    UnitaryMatrix(ComplexMatrix mat, Trusted) : mat_(std::move(mat)) {}

    ComplexMatrix mat_;
};

class BlochVector {
  public:
    explicit BlochVector(const Eigen::Vector3d& r);
    BlochVector(double x, double y, double z) : BlochVector(Eigen::Vector3d(x, y, z)) {}

    [[nodiscard]] const Eigen::Vector3d& vector() const noexcept { return r_; }
    [[nodiscard]] double length() const noexcept { return r_.norm(); }
    [[nodiscard]] double x() const noexcept { return r_.x(); }
    [[nodiscard]] double y() const noexcept { return r_.y(); }
    [[nodiscard]] double z() const noexcept { return r_.z(); }

  private:
    Eigen::Vector3d r_;
};

// Pauli matrices and small constructors.
[[nodiscard]] ComplexMatrix pauli_x();
[[nodiscard]] ComplexMatrix pauli_y();
[[nodiscard]] ComplexMatrix pauli_z();
[[nodiscard]] ComplexMatrix identity_matrix(Eigen::Index dim);
/// |index><index| in dimension `dim`.
[[nodiscard]] ComplexMatrix projector(Eigen::Index dim, Eigen::Index index);
[[nodiscard]] ComplexVector basis_ket(Eigen::Index dim, Eigen::Index index);

/// Kronecker product a (x) b; the first factor is the slow (path) index.
[[nodiscard]] ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
[[nodiscard]] UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b);
[[nodiscard]] DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// U rho U^dagger, re-symmetrized.
[[nodiscard]] DensityMatrix conjugate(const UnitaryMatrix& u, const DensityMatrix& rho);

struct SpinBranch {
    double probability;   ///< trace of the block, i.e. detection probability
    ComplexMatrix block;  ///< unnormalized 2x2 spin block
};

/// Projects the path qubit of a 4x4 state onto |path_outcome> and returns the
/// unnormalized spin block together with its trace.
[[nodiscard]] SpinBranch partial_trace_spin(const DensityMatrix& rho4, int path_outcome);

/// rho = (1 + r . sigma) / 2.
[[nodiscard]] DensityMatrix bloch_to_density(const BlochVector& r);
/// r_i = Tr(rho sigma_i); rho must be 2x2.
[[nodiscard]] BlochVector density_to_bloch(const DensityMatrix& rho);

/// Largest absolute entry of a matrix.
[[nodiscard]] double max_abs(const ComplexMatrix& m);

/// |Tr(a^dagger b)| / dim: 1 exactly when a and b agree up to a global phase.
[[nodiscard]] double gate_fidelity(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace mixphase
