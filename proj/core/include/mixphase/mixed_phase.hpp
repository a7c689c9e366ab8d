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

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

/**
 * Closed-form theory of the mixed-state interferometric phase.
 *
 * A mixed spin state is an incoherent mixture of pure branches k with weights
 * w_k; each branch contributes a fringe of visibility nu_k and shift phi_k.
 * The mixture then shows a single fringe whose shift and visibility are the
 * argument and modulus of sum_k w_k nu_k exp(i phi_k). For a cyclic loop that
 * encloses solid angle Omega on the Bloch sphere, the two eigenstates of a
 * spin state with Bloch length r pick up -/+ Omega/2, which gives
 *
 *   shift      = -atan2(r sin(Omega/2), cos(Omega/2))
 *   visibility = sqrt(cos^2(Omega/2) + r^2 sin^2(Omega/2))
 *
 * All angles are radians.
 */
namespace mixphase::mixedphase {

inline constexpr double kUndefinedPhase = 1e-14;
inline constexpr double kWeightTol = 1e-12;

class UndefinedPhaseError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

struct PureBranch {
    double weight;
    double visibility;
    double phase;
};

/// arg(sum_k w_k nu_k e^{i phi_k}). Throws UndefinedPhaseError when the sum
/// vanishes and std::invalid_argument when the weights are not normalized.
[[nodiscard]] double mixed_phase(std::span<const PureBranch> branches);

/// |sum_k w_k nu_k e^{i phi_k}|.
[[nodiscard]] double mixed_visibility(std::span<const PureBranch> branches);

struct EigenBranches {
    std::array<double, 2> weights;         ///< (1 + r)/2, (1 - r)/2
    std::array<Eigen::Vector2cd, 2> kets;  ///< orthonormal eigenvectors, same order
    double purity;                         ///< Bloch length r
    bool degenerate;                       ///< r == 0; kets are then |0>, |1>
};

[[nodiscard]] EigenBranches eigen_decompose_mixed(const DensityMatrix& rho);

class SolidAngleLoop {
  public:
    SolidAngleLoop(double omega, double purity);

    [[nodiscard]] double omega() const noexcept { return omega_; }
    [[nodiscard]] double purity() const noexcept { return purity_; }

  private:
    double omega_;
    double purity_;
};

/// Fringe shift for a mixed state of purity r taken around a loop of solid
/// angle Omega. Continuous in Omega across pi for r < 1 and equal to -Omega/2
/// at r = 1. Throws UndefinedPhaseError at Omega = pi, r = 0.
[[nodiscard]] double shift_formula(const SolidAngleLoop& loop);

[[nodiscard]] double visibility_formula(const SolidAngleLoop& loop);

/// The two eigenstate branches of a cyclic loop: weight (1 - r)/2 with phase
/// +Omega/2 and weight (1 + r)/2 with phase -Omega/2, both with nu_k = 1.
[[nodiscard]] std::array<PureBranch, 2> pure_branch_phases(double omega, double purity);

/// Unitaries A(t_i) sampled on a uniform grid, with A(t_0) = 1.
class UnitaryPath {
  public:
    UnitaryPath(std::vector<UnitaryMatrix> samples, double dt);

    [[nodiscard]] const std::vector<UnitaryMatrix>& samples() const noexcept { return samples_; }
    [[nodiscard]] double dt() const noexcept { return dt_; }
    [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
    [[nodiscard]] const UnitaryMatrix& back() const { return samples_.back(); }

  private:
    std::vector<UnitaryMatrix> samples_;
    double dt_;
};

/// exp(-i angle (cos phase sigma_x + sin phase sigma_y) / 2).
[[nodiscard]] UnitaryMatrix xy_rotation(double angle, double phase);

/// Two geodesic pi flips with rotation-axis phases theta and theta + pi + phi,
/// each taking half of the unit time interval; encloses Omega = 2 phi.
/// `steps` is the number of intervals (steps + 1 samples).
[[nodiscard]] UnitaryPath slice_circuit_path(double phi, std::size_t steps, double theta = 0.0);

/// exp(-i total_angle t (n . sigma) / 2) for t in [0, 1].
[[nodiscard]] UnitaryPath axis_rotation_path(const Eigen::Vector3d& axis, double total_angle,
                                             std::size_t steps);

/// arg Tr[rho A(t_end)].
[[nodiscard]] double geometric_phase_of_path(const DensityMatrix& rho, const UnitaryPath& path);

struct TransportViolation {
    double global;                       ///< max_t |Tr[rho(t) A' A^dagger]|
    std::array<double, 2> per_eigenstate;  ///< max_t |<k(t)| A' A^dagger |k(t)>|
    bool degenerate_basis;
};

/// Parallel-transport residuals of `path` for the state `rho`, using central
/// differences for A' on interior samples. rho(t) = A rho A^dagger and
/// |k(t)> = A |k(0)>. Needs at least 3 samples.
[[nodiscard]] TransportViolation parallel_transport_violation(const DensityMatrix& rho,
                                                              const UnitaryPath& path);

}  // namespace mixphase::mixedphase
