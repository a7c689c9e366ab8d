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

#include "mixphase/interferometer.hpp"

#include "test_random.hpp"

#include <doctest.h>

#include <vector>

using namespace mixphase;
using namespace mixphase::mixedphase;

namespace {

// Independently computed reference values (50-digit arithmetic, rounded).
constexpr double kShiftOmega120R05Deg = -40.8933946491309056;  // -atan(0.5 tan 60 deg)
constexpr double kVisOmega120R05 = 0.661437827766147648;       // sqrt(0.4375)

DensityMatrix z_state(double z) { return bloch_to_density(BlochVector(0, 0, z)); }

UnitaryMatrix loop(double omega) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = std::exp(-kI * (omega / 2.0));
    m(1, 1) = std::exp(kI * (omega / 2.0));
    return UnitaryMatrix(m);
}

}  // namespace

TEST_SUITE("mixedphase") {

TEST_CASE("two equal-weight branches") {
    const std::vector<PureBranch> b{{0.5, 1.0, 0.0}, {0.5, 1.0, kPi / 2}};
    CHECK(mixed_phase(b) == doctest::Approx(kPi / 4).epsilon(1e-14));
    CHECK(mixed_visibility(b) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
}

TEST_CASE("opposite branches cancel") {
    const std::vector<PureBranch> b{{0.5, 1.0, 0.0}, {0.5, 1.0, kPi}};
    CHECK_THROWS_AS((void)mixed_phase(b), UndefinedPhaseError);
    CHECK(mixed_visibility(b) < 1e-15);
}

TEST_CASE("branch input validation") {
    const std::vector<PureBranch> bad_sum{{0.5, 1.0, 0.0}, {0.4, 1.0, 0.0}};
    CHECK_THROWS_AS((void)mixed_phase(bad_sum), std::invalid_argument);
    const std::vector<PureBranch> negative{{1.5, 1.0, 0.0}, {-0.5, 1.0, 0.0}};
    CHECK_THROWS_AS((void)mixed_visibility(negative), std::invalid_argument);
    CHECK_THROWS_AS((void)mixed_phase(std::vector<PureBranch>{}), std::invalid_argument);
}

TEST_CASE("shift formula reference points") {
    CHECK(rad2deg(shift_formula({deg2rad(120.0), 0.5})) == doctest::Approx(kShiftOmega120R05Deg).epsilon(1e-14));
    CHECK(visibility_formula({deg2rad(120.0), 0.5}) == doctest::Approx(kVisOmega120R05).epsilon(1e-14));
    CHECK(rad2deg(shift_formula({deg2rad(180.0), 1.0})) == doctest::Approx(-90.0).epsilon(1e-14));
    CHECK(rad2deg(shift_formula({deg2rad(90.0), 1.0})) == doctest::Approx(-45.0).epsilon(1e-14));
    CHECK(std::abs(shift_formula({deg2rad(120.0), 0.0})) < 1e-15);
    CHECK(visibility_formula({deg2rad(180.0), 0.3}) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(visibility_formula({0.0, 0.3}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("shift is undefined at Omega = 180 with r = 0") {
    CHECK_THROWS_AS((void)shift_formula({kPi, 0.0}), UndefinedPhaseError);
    CHECK(visibility_formula({kPi, 0.0}) < 1e-15);
}

TEST_CASE("loop construction rejects bad input") {
    CHECK_THROWS_AS(SolidAngleLoop(1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(SolidAngleLoop(1.0, 1.1), std::invalid_argument);
    CHECK_THROWS_AS(SolidAngleLoop(std::nan(""), 0.5), std::invalid_argument);
}

TEST_CASE("branch sum reproduces the closed forms") {
    for (int oi = 0; oi <= 12; ++oi) {
        const double omega = deg2rad(30.0 * oi);
        for (double r : {0.0, 0.2, 0.5, 0.8, 1.0}) {
            if (oi == 6 && r == 0.0) continue;
            const auto b = pure_branch_phases(omega, r);
            const SolidAngleLoop l(omega, r);
            const double dphi = std::remainder(mixed_phase(b) - shift_formula(l), 2 * kPi);
            CHECK(std::abs(dphi) < 1e-12);
            CHECK(std::abs(mixed_visibility(b) - visibility_formula(l)) < 1e-12);
        }
    }
}

TEST_CASE("closed forms match the trace of the loop unitary") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        const double omega = testing::uniform(rng, -2 * kPi, 2 * kPi);
        const double r = testing::uniform(rng, 0, 1);
        const auto tp = interferometer::trace_polar(loop(omega), z_state(r));
        const SolidAngleLoop l(omega, r);
        CHECK(std::abs(tp.visibility - visibility_formula(l)) < 1e-12);
        if (tp.visibility > 1e-6) {
            CHECK(std::abs(std::remainder(tp.phase - shift_formula(l), 2 * kPi)) < 1e-10);
        }
    }
}

TEST_CASE("shift is odd in Omega and monotone in r") {
    for (double omega : {0.3, 1.0, 2.0, 3.0}) {
        double prev = 0.0;
        for (double r = 0.1; r <= 1.0; r += 0.1) {
            const double s = shift_formula({omega, r});
            CHECK(s == doctest::Approx(-shift_formula({-omega, r})).epsilon(1e-14));
            CHECK(s < prev);
            prev = s;
        }
    }
}

TEST_CASE("eigen decomposition of a z state") {
    const EigenBranches e = eigen_decompose_mixed(z_state(0.6));
    CHECK(e.weights[0] == doctest::Approx(0.8));
    CHECK(e.weights[1] == doctest::Approx(0.2));
    CHECK(e.purity == doctest::Approx(0.6));
    CHECK_FALSE(e.degenerate);
    CHECK(std::abs(e.kets[0](0)) == doctest::Approx(1.0));
    CHECK(std::abs(e.kets[1](1)) == doctest::Approx(1.0));
}

TEST_CASE("eigen decomposition reconstructs random states") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const DensityMatrix rho = testing::random_density(rng, 2);
        const EigenBranches e = eigen_decompose_mixed(rho);
        ComplexMatrix back = ComplexMatrix::Zero(2, 2);
        for (int k = 0; k < 2; ++k) back += e.weights[k] * e.kets[k] * e.kets[k].adjoint();
        CHECK(max_abs(back - rho.matrix()) < 1e-12);
    }
}

TEST_CASE("maximally mixed state is flagged degenerate") {
    CHECK(eigen_decompose_mixed(z_state(0.0)).degenerate);
}

TEST_CASE("slice path closes on the loop unitary") {
    for (double phi : {0.0, 0.4, 1.0, kPi / 2, 2.5}) {
        for (double theta : {0.0, 0.9}) {
            const UnitaryPath p = slice_circuit_path(phi, 200, theta);
            CHECK(p.size() == 201);
            CHECK(gate_fidelity(p.back().matrix(), loop(2 * phi).matrix()) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(max_abs(p.back().matrix() - loop(2 * phi).matrix()) < 1e-12);
        }
    }
}

TEST_CASE("slice path is parallel transport for every purity") {
    for (double r : {0.0, 0.3, 0.7, 1.0}) {
        const TransportViolation v = parallel_transport_violation(z_state(r), slice_circuit_path(1.1, 10000));
        CHECK(v.global <= 1e-10);
        CHECK(v.per_eigenstate[0] <= 1e-10);
        CHECK(v.per_eigenstate[1] <= 1e-10);
        CHECK(v.degenerate_basis == (r == 0.0));
    }
}

TEST_CASE("rotation about z is not parallel transport") {
    const TransportViolation v =
        parallel_transport_violation(z_state(0.5), axis_rotation_path({0, 0, 1}, 2.0, 1000));
    CHECK(v.global > 0.1);
    CHECK(v.per_eigenstate[0] > 0.1);
}

TEST_CASE("geometric phase of the slice loop") {
    const UnitaryPath p = slice_circuit_path(deg2rad(60.0), 100);
    CHECK(rad2deg(geometric_phase_of_path(z_state(0.5), p)) ==
          doctest::Approx(kShiftOmega120R05Deg).epsilon(1e-12));
    CHECK_THROWS_AS((void)geometric_phase_of_path(z_state(0.0), slice_circuit_path(kPi / 2, 100)),
                    UndefinedPhaseError);
}

TEST_CASE("path construction errors") {
    CHECK_THROWS_AS((void)slice_circuit_path(0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)axis_rotation_path({0, 0, 0}, 1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(UnitaryPath({UnitaryMatrix(pauli_x())}, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(UnitaryPath({UnitaryMatrix::identity(2)}, 0.0), std::invalid_argument);
    const UnitaryPath single({UnitaryMatrix::identity(2)}, 0.1);
    CHECK_THROWS_AS((void)parallel_transport_violation(z_state(0.5), single), std::invalid_argument);
}

}  // TEST_SUITE
