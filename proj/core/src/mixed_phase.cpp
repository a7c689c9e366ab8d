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

#include "mixphase/mixed_phase.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace mixphase::mixedphase {

namespace {

constexpr double kDegeneratePurity = 1e-12;

Complex branch_sum(std::span<const PureBranch> branches) {
    if (branches.empty()) {
        throw std::invalid_argument("mixed phase: no branches");
    }
    double wsum = 0.0;
    Complex z{0.0, 0.0};
    for (const auto& b : branches) {
        if (b.weight < 0.0 || b.weight > 1.0 || b.visibility < 0.0 || b.visibility > 1.0) {
            throw std::invalid_argument("mixed phase: branch weight and visibility must lie in [0, 1]");
        }
        wsum += b.weight;
        z += b.weight * b.visibility * std::exp(kI * b.phase);
    }
    if (std::abs(wsum - 1.0) > kWeightTol) {
        throw std::invalid_argument("mixed phase: weights sum to " + std::to_string(wsum));
    }
    return z;
}

}  // namespace

double mixed_phase(std::span<const PureBranch> branches) {
    const Complex z = branch_sum(branches);
    if (std::abs(z) < kUndefinedPhase) {
        throw UndefinedPhaseError("mixed phase undefined: branch sum vanishes");
    }
    return std::arg(z);
}

double mixed_visibility(std::span<const PureBranch> branches) {
    return std::abs(branch_sum(branches));
}

EigenBranches eigen_decompose_mixed(const DensityMatrix& rho) {
    const double r = density_to_bloch(rho).length();
    EigenBranches out{};
    out.purity = r;
    out.weights = {0.5 * (1.0 + r), 0.5 * (1.0 - r)};
    if (r < kDegeneratePurity) {
        out.degenerate = true;
        out.kets = {Eigen::Vector2cd(1.0, 0.0), Eigen::Vector2cd(0.0, 1.0)};
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(Eigen::Matrix2cd(rho.matrix()));
    // Ascending eigenvalues: column 1 holds (1 + r)/2.
    out.degenerate = false;
    out.kets = {solver.eigenvectors().col(1), solver.eigenvectors().col(0)};
    return out;
}

SolidAngleLoop::SolidAngleLoop(double omega, double purity) : omega_(omega), purity_(purity) {
    if (!std::isfinite(omega)) {
        throw std::invalid_argument("SolidAngleLoop: omega must be finite");
    }
    if (!(purity >= 0.0 && purity <= 1.0 + kBlochTol)) {
        throw std::invalid_argument("SolidAngleLoop: purity must lie in [0, 1]");
    }
    purity_ = std::min(purity, 1.0);
}

double shift_formula(const SolidAngleLoop& loop) {
    const double half = 0.5 * loop.omega();
    const double s = loop.purity() * std::sin(half);
    const double c = std::cos(half);
    if (std::hypot(s, c) < kUndefinedPhase) {
        throw UndefinedPhaseError("shift undefined: Omega = 180 deg with r = 0");
    }
    return -std::atan2(s, c);
}

double visibility_formula(const SolidAngleLoop& loop) {
    const double half = 0.5 * loop.omega();
    const double c = std::cos(half);
    const double s = std::sin(half);
    return std::sqrt(c * c + loop.purity() * loop.purity() * s * s);
}

std::array<PureBranch, 2> pure_branch_phases(double omega, double purity) {
    const SolidAngleLoop loop(omega, purity);
    const double r = loop.purity();
    return {PureBranch{0.5 * (1.0 - r), 1.0, +0.5 * omega},
            PureBranch{0.5 * (1.0 + r), 1.0, -0.5 * omega}};
}

// ---------------------------------------------------------------------------
// Paths

UnitaryPath::UnitaryPath(std::vector<UnitaryMatrix> samples, double dt)
    : samples_(std::move(samples)), dt_(dt) {
    if (samples_.empty()) {
        throw std::invalid_argument("UnitaryPath: no samples");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("UnitaryPath: time step must be positive");
    }
    const Eigen::Index dim = samples_.front().dim();
    if (max_abs(samples_.front().matrix() - identity_matrix(dim)) > kUnitaryTol) {
        throw std::invalid_argument("UnitaryPath: first sample must be the identity");
    }
    for (const auto& u : samples_) {
        if (u.dim() != dim) {
            throw DimensionError("UnitaryPath: samples of mixed dimension");
        }
    }
}

UnitaryMatrix xy_rotation(double angle, double phase) {
    const ComplexMatrix axis = std::cos(phase) * pauli_x() + std::sin(phase) * pauli_y();
    return UnitaryMatrix(std::cos(0.5 * angle) * identity_matrix(2) -
                         kI * std::sin(0.5 * angle) * axis);
}

UnitaryPath slice_circuit_path(double phi, std::size_t steps, double theta) {
    if (steps < 2) {
        throw std::invalid_argument("slice_circuit_path: need at least 2 steps");
    }
    const double dt = 1.0 / static_cast<double>(steps);
    const UnitaryMatrix first_flip = xy_rotation(kPi, theta);
    std::vector<UnitaryMatrix> samples;
    samples.reserve(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        if (2 * i <= steps) {
            samples.push_back(xy_rotation(2.0 * kPi * t, theta));
        } else {
            samples.push_back(xy_rotation(2.0 * kPi * (t - 0.5), theta + kPi + phi) * first_flip);
        }
    }
    return UnitaryPath(std::move(samples), dt);
}

UnitaryPath axis_rotation_path(const Eigen::Vector3d& axis, double total_angle, std::size_t steps) {
    if (steps < 2) {
        throw std::invalid_argument("axis_rotation_path: need at least 2 steps");
    }
    if (axis.norm() == 0.0) {
        throw std::invalid_argument("axis_rotation_path: zero axis");
    }
    const Eigen::Vector3d n = axis.normalized();
    const ComplexMatrix generator = n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z();
    const double dt = 1.0 / static_cast<double>(steps);
    std::vector<UnitaryMatrix> samples;
    samples.reserve(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        const double a = total_angle * static_cast<double>(i) * dt;
        samples.emplace_back(std::cos(0.5 * a) * identity_matrix(2) -
                             kI * std::sin(0.5 * a) * generator);
    }
    return UnitaryPath(std::move(samples), dt);
}

double geometric_phase_of_path(const DensityMatrix& rho, const UnitaryPath& path) {
    if (rho.dim() != path.back().dim()) {
        throw DimensionError("geometric_phase_of_path: dimension mismatch");
    }
    const Complex z = (rho.matrix() * path.back().matrix()).trace();
    if (std::abs(z) < kUndefinedPhase) {
        throw UndefinedPhaseError("geometric phase undefined: Tr[rho A] vanishes");
    }
    return std::arg(z);
}

TransportViolation parallel_transport_violation(const DensityMatrix& rho, const UnitaryPath& path) {
    if (path.size() < 3) {
        throw std::invalid_argument("parallel_transport_violation: need at least 3 samples");
    }
    if (rho.dim() != 2 || path.back().dim() != 2) {
        throw DimensionError("parallel_transport_violation: expected a spin-qubit path");
    }
    const EigenBranches eig = eigen_decompose_mixed(rho);
    const auto& s = path.samples();
    const double inv_2dt = 1.0 / (2.0 * path.dt());

    TransportViolation out{0.0, {0.0, 0.0}, eig.degenerate};
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const ComplexMatrix& a = s[i].matrix();
        const ComplexMatrix generator = (s[i + 1].matrix() - s[i - 1].matrix()) * inv_2dt * a.adjoint();
        const ComplexMatrix rho_t = a * rho.matrix() * a.adjoint();
        out.global = std::max(out.global, std::abs((rho_t * generator).trace()));
        for (std::size_t k = 0; k < 2; ++k) {
            const Eigen::Vector2cd ket = a * eig.kets[k];
            const Complex g = ket.dot(generator * ket);
            out.per_eigenstate[k] = std::max(out.per_eigenstate[k], std::abs(g));
        }
    }
    return out;
}

}  // namespace mixphase::mixedphase
