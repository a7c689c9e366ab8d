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

#include "mixphase/qcore.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace mixphase {

namespace {

bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) {
                return false;
            }
        }
    }
    return true;
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream os;
        os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
        throw DimensionError(os.str());
    }
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(const ComplexMatrix& mat) {
    require_square(mat, "DensityMatrix");
    if (mat.rows() != 2 && mat.rows() != 4) {
        throw DimensionError("DensityMatrix: dimension must be 2 or 4, got " +
                             std::to_string(mat.rows()));
    }
    if (!all_finite(mat)) {
        throw InvalidStateError("DensityMatrix: non-finite entry");
    }
    const double herm_err = max_abs(mat - mat.adjoint());
    if (herm_err > kHermitianTol) {
        throw InvalidStateError("DensityMatrix: not Hermitian (deviation " +
                                std::to_string(herm_err) + ")");
    }
    mat_ = 0.5 * (mat + mat.adjoint());
    const double trace = mat_.trace().real();
    if (std::abs(trace - 1.0) > kTraceTol) {
        throw InvalidStateError("DensityMatrix: trace " + std::to_string(trace) + " != 1");
    }
    const double min_eig = eigenvalues().minCoeff();
    if (min_eig < -kPsdTol) {
        throw InvalidStateError("DensityMatrix: not positive semidefinite (min eigenvalue " +
                                std::to_string(min_eig) + ")");
    }
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(mat_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(const ComplexMatrix& mat) : mat_(mat) {
    require_square(mat, "UnitaryMatrix");
    if (!all_finite(mat)) {
        throw InvalidStateError("UnitaryMatrix: non-finite entry");
    }
    const double err = max_abs(mat * mat.adjoint() - identity_matrix(mat.rows()));
    if (err > kUnitaryTol) {
        throw InvalidStateError("UnitaryMatrix: U U^dagger deviates from identity by " +
                                std::to_string(err));
    }
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index dim) {
    return UnitaryMatrix(identity_matrix(dim), Trusted{});
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    return UnitaryMatrix(mat_.adjoint(), Trusted{});
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("UnitaryMatrix product: dimension mismatch");
    }
    return UnitaryMatrix(a.mat_ * b.mat_, UnitaryMatrix::Trusted{});
}

// ---------------------------------------------------------------------------
// BlochVector

BlochVector::BlochVector(const Eigen::Vector3d& r) : r_(r) {
    if (!r.allFinite()) {
        throw InvalidStateError("BlochVector: non-finite component");
    }
    if (r.norm() > 1.0 + kBlochTol) {
        throw InvalidStateError("BlochVector: length " + std::to_string(r.norm()) + " exceeds 1");
    }
}

// ---------------------------------------------------------------------------
// Constructors

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0.0, -kI, kI, 0.0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

ComplexMatrix identity_matrix(Eigen::Index dim) {
    return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix projector(Eigen::Index dim, Eigen::Index index) {
    if (index < 0 || index >= dim) {
        throw DimensionError("projector: index out of range");
    }
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    p(index, index) = 1.0;
    return p;
}

ComplexVector basis_ket(Eigen::Index dim, Eigen::Index index) {
    if (index < 0 || index >= dim) {
        throw DimensionError("basis_ket: index out of range");
    }
    ComplexVector v = ComplexVector::Zero(dim);
    v(index) = 1.0;
    return v;
}

// ---------------------------------------------------------------------------
// Operations

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    return UnitaryMatrix(tensor(a.matrix(), b.matrix()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(tensor(a.matrix(), b.matrix()));
}

DensityMatrix conjugate(const UnitaryMatrix& u, const DensityMatrix& rho) {
    if (u.dim() != rho.dim()) {
        throw DimensionError("conjugate: unitary is " + std::to_string(u.dim()) +
                             "-dimensional but state is " + std::to_string(rho.dim()) +
                             "-dimensional");
    }
    ComplexMatrix out = u.matrix() * rho.matrix() * u.matrix().adjoint();
    return DensityMatrix(0.5 * (out + out.adjoint()));
}

SpinBranch partial_trace_spin(const DensityMatrix& rho4, int path_outcome) {
    if (rho4.dim() != 4) {
        throw DimensionError("partial_trace_spin: expected a 4x4 state");
    }
    if (path_outcome != 0 && path_outcome != 1) {
        throw std::invalid_argument("partial_trace_spin: path outcome must be 0 or 1");
    }
    const Eigen::Index off = 2 * path_outcome;
    ComplexMatrix block = rho4.matrix().block(off, off, 2, 2);
    const double prob = block.trace().real();
    return {prob, std::move(block)};
}

DensityMatrix bloch_to_density(const BlochVector& r) {
    ComplexMatrix m =
        0.5 * (identity_matrix(2) + r.x() * pauli_x() + r.y() * pauli_y() + r.z() * pauli_z());
    return DensityMatrix(m);
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
    if (rho.dim() != 2) {
        throw DimensionError("density_to_bloch: expected a 2x2 state");
    }
    const ComplexMatrix& m = rho.matrix();
    const double x = (m * pauli_x()).trace().real();
    const double y = (m * pauli_y()).trace().real();
    const double z = (m * pauli_z()).trace().real();
    Eigen::Vector3d r(x, y, z);
    // PSD states can overshoot the unit sphere by rounding only.
    if (r.norm() > 1.0) {
        r /= r.norm();
    }
    return BlochVector(r);
}

double gate_fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("gate_fidelity: dimension mismatch");
    }
    return std::abs((a.adjoint() * b).trace()) / static_cast<double>(a.rows());
}

}  // namespace mixphase
