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

#include "mixphase/nmr.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mixphase::nmr {

namespace {

ComplexMatrix spin_rotation(double flip_angle, double phase) {
    const ComplexMatrix axis = std::cos(phase) * pauli_x() + std::sin(phase) * pauli_y();
    return std::cos(0.5 * flip_angle) * identity_matrix(2) - kI * std::sin(0.5 * flip_angle) * axis;
}

std::string diagonal_string(const std::array<double, 4>& d) {
    std::ostringstream os;
    os.precision(12);
    os << "(" << d[0] << ", " << d[1] << ", " << d[2] << ", " << d[3] << ")";
    return os.str();
}

}  // namespace

void SpinSystem::validate() const {
    if (!(j_coupling_hz > 0.0)) {
        throw std::invalid_argument("SpinSystem: J coupling must be positive");
    }
    if (!(gamma_ratio > 0.0)) {
        throw std::invalid_argument("SpinSystem: gamma ratio must be positive");
    }
}

PulseEvent PulseEvent::rf(Target target, double flip_angle, double phase) {
    PulseEvent e;
    e.kind = EventKind::RfPulse;
    e.target = target;
    e.flip_angle = flip_angle;
    e.phase = phase;
    return e;
}

PulseEvent PulseEvent::transition(double flip_angle, double phase) {
    PulseEvent e;
    e.kind = EventKind::TransitionPulse;
    e.flip_angle = flip_angle;
    e.phase = phase;
    return e;
}

PulseEvent PulseEvent::delay(double seconds) {
    if (!(seconds >= 0.0) || !std::isfinite(seconds)) {
        throw std::invalid_argument("delay: duration must be finite and non-negative");
    }
    PulseEvent e;
    e.kind = EventKind::Delay;
    e.duration = seconds;
    return e;
}

PulseEvent PulseEvent::gradient() {
    PulseEvent e;
    e.kind = EventKind::Gradient;
    return e;
}

PulseProgramme::PulseProgramme(std::vector<PulseEvent> events) : events_(std::move(events)) {
    if (events_.empty()) {
        throw std::invalid_argument("PulseProgramme: empty event list");
    }
    for (const auto& e : events_) {
        const bool is_pulse = e.kind == EventKind::RfPulse || e.kind == EventKind::TransitionPulse;
        if (is_pulse && (!std::isfinite(e.flip_angle) || !std::isfinite(e.phase))) {
            throw std::invalid_argument("PulseProgramme: non-finite pulse parameter");
        }
        if (!is_pulse && (e.flip_angle != 0.0 || e.phase != 0.0)) {
            throw std::invalid_argument("PulseProgramme: flip angle given for a non-pulse event");
        }
        if (e.kind != EventKind::Delay && e.duration != 0.0) {
            throw std::invalid_argument("PulseProgramme: duration given for a non-delay event");
        }
        if (e.kind == EventKind::Delay && !(e.duration >= 0.0 && std::isfinite(e.duration))) {
            throw std::invalid_argument("PulseProgramme: invalid delay duration");
        }
    }
}

PulseProgramme PulseProgramme::then(const PulseProgramme& next) const {
    std::vector<PulseEvent> all = events_;
    all.insert(all.end(), next.events_.begin(), next.events_.end());
    return PulseProgramme(std::move(all));
}

// ---------------------------------------------------------------------------
// Propagators

UnitaryMatrix rf_propagator(Target target, double flip_angle, double phase) {
    const ComplexMatrix r = spin_rotation(flip_angle, phase);
    const ComplexMatrix one = identity_matrix(2);
    switch (target) {
        case Target::H:
            return UnitaryMatrix(tensor(r, one));
        case Target::C:
            return UnitaryMatrix(tensor(one, r));
        case Target::Both:
            return UnitaryMatrix(tensor(r, r));
    }
    throw std::invalid_argument("rf_propagator: unknown target");
}

UnitaryMatrix j_evolution(const SpinSystem& sys, double t) {
    return free_evolution(sys, t, Offsets{});
}

UnitaryMatrix free_evolution(const SpinSystem& sys, double t, const Offsets& offsets) {
    sys.validate();
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("free evolution: duration must be finite and non-negative");
    }
    // Diagonal Hamiltonian: 2 pi (J/4 zz + nu_H/2 z_H + nu_C/2 z_C).
    constexpr std::array<double, 4> zz{1.0, -1.0, -1.0, 1.0};
    constexpr std::array<double, 4> zh{1.0, 1.0, -1.0, -1.0};
    constexpr std::array<double, 4> zc{1.0, -1.0, 1.0, -1.0};
    ComplexMatrix u = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
        const double energy = 2.0 * kPi *
                              (0.25 * sys.j_coupling_hz * zz[i] + 0.5 * offsets.h_hz * zh[i] +
                               0.5 * offsets.c_hz * zc[i]);
        u(i, i) = std::exp(-kI * energy * t);
    }
    return UnitaryMatrix(u);
}

UnitaryMatrix transition_pulse(double flip_angle, double phase) {
    ComplexMatrix u = identity_matrix(4);
    u.block(2, 2, 2, 2) = spin_rotation(flip_angle, phase);
    return UnitaryMatrix(u);
}

DensityMatrix gradient(const DensityMatrix& rho) {
    return DensityMatrix(ComplexMatrix(rho.matrix().diagonal().asDiagonal()));
}

UnitaryMatrix programme_propagator(const SpinSystem& sys, const PulseProgramme& prog,
                                   const Offsets& offsets) {
    UnitaryMatrix total = UnitaryMatrix::identity(4);
    for (const auto& e : prog.events()) {
        switch (e.kind) {
            case EventKind::RfPulse:
                total = rf_propagator(e.target, e.flip_angle, e.phase) * total;
                break;
            case EventKind::TransitionPulse:
                total = transition_pulse(e.flip_angle, e.phase) * total;
                break;
            case EventKind::Delay:
                total = free_evolution(sys, e.duration, offsets) * total;
                break;
            case EventKind::Gradient:
                throw std::invalid_argument(
                    "programme_propagator: a gradient is not a unitary operation");
        }
    }
    return total;
}

DensityMatrix apply_programme(const SpinSystem& sys, const PulseProgramme& prog,
                              const DensityMatrix& rho, const ProgrammeOptions& opts) {
    if (rho.dim() != 4) {
        throw DimensionError("apply_programme: expected a two-spin state");
    }
    DensityMatrix state = rho;
    for (const auto& e : prog.events()) {
        switch (e.kind) {
            case EventKind::RfPulse:
                state = conjugate(rf_propagator(e.target, e.flip_angle, e.phase), state);
                break;
            case EventKind::TransitionPulse:
                state = conjugate(transition_pulse(e.flip_angle, e.phase), state);
                break;
            case EventKind::Delay:
                state = conjugate(free_evolution(sys, e.duration, opts.offsets), state);
                break;
            case EventKind::Gradient:
                if (!opts.gradients_enabled) {
                    break;
                }
                if (std::abs(state(1, 2)) > kZeroQuantumTol) {
                    throw ZeroQuantumError(
                        "gradient applied to a state with zero-quantum coherence |01><10| = " +
                        std::to_string(std::abs(state(1, 2))));
                }
                state = gradient(state);
                break;
        }
    }
    return state;
}

// ---------------------------------------------------------------------------
// State preparation

DensityMatrix thermal_state(const SpinSystem& sys, std::optional<double> epsilon) {
    sys.validate();
    const double eps_max = 1.0 / (4.0 * (sys.gamma_ratio + 1.0));
    const double eps = epsilon.value_or(0.5 * eps_max);
    if (eps < 0.0 || eps > eps_max) {
        throw std::invalid_argument("thermal_state: epsilon outside [0, 1/(4(gamma_ratio + 1))]");
    }
    const ComplexMatrix one = identity_matrix(2);
    const ComplexMatrix dev = sys.gamma_ratio * tensor(pauli_z(), one) + tensor(one, pauli_z());
    return DensityMatrix(0.25 * identity_matrix(4) + eps * dev);
}

PulseProgramme pps_programme(const SpinSystem& sys) {
    sys.validate();
    const double quarter_j = 1.0 / (4.0 * sys.j_coupling_hz);
    return PulseProgramme({
        PulseEvent::rf(Target::H, kPi / 3.0, kPhaseX),
        PulseEvent::gradient(),
        PulseEvent::rf(Target::H, kPi / 4.0, kPhaseX),
        PulseEvent::delay(quarter_j),
        PulseEvent::rf(Target::Both, kPi, kPhaseY),
        PulseEvent::delay(quarter_j),
        PulseEvent::rf(Target::H, kPi / 4.0, kPhaseYBar),
        PulseEvent::rf(Target::Both, kPi, kPhaseYBar),
        PulseEvent::gradient(),
    });
}

PpsStructure analyze_pps(const DensityMatrix& rho) {
    if (rho.dim() != 4) {
        throw DimensionError("analyze_pps: expected a two-spin state");
    }
    PpsStructure s{};
    const Eigen::VectorXd d = rho.diagonal();
    for (int i = 0; i < 4; ++i) {
        s.diagonal[i] = d(i);
    }
    const auto [lo, hi] = std::minmax({s.diagonal[1], s.diagonal[2], s.diagonal[3]});
    s.background = (s.diagonal[1] + s.diagonal[2] + s.diagonal[3]) / 3.0;
    s.delta = s.diagonal[0] - s.background;
    s.background_spread = hi - lo;
    ComplexMatrix off = rho.matrix();
    off.diagonal().setZero();
    s.max_off_diagonal = max_abs(off);
    return s;
}

bool is_pps(const PpsStructure& s) {
    return s.delta > 0.0 && s.background_spread <= kPpsBackgroundTol &&
           s.max_off_diagonal <= kPpsOffDiagonalTol;
}

DensityMatrix prepare_pps(const SpinSystem& sys, const ProgrammeOptions& opts,
                          std::optional<double> epsilon) {
    DensityMatrix rho = apply_programme(sys, pps_programme(sys), thermal_state(sys, epsilon), opts);
    const PpsStructure s = analyze_pps(rho);
    if (!is_pps(s)) {
        std::ostringstream os;
        os.precision(3);
        os << "pseudo-pure preparation failed: diagonal " << diagonal_string(s.diagonal)
           << ", background spread " << s.background_spread << ", max off-diagonal "
           << s.max_off_diagonal;
        throw PreparationError(os.str(), s.diagonal);
    }
    return rho;
}

PulseProgramme mixed_state_programme(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 0.5 * kPi + 1e-12)) {
        throw std::invalid_argument("mixed_state_programme: alpha must lie in [0, 90] degrees");
    }
    return PulseProgramme({PulseEvent::rf(Target::C, alpha, kPhaseX), PulseEvent::gradient()});
}

DensityMatrix prepare_mixed(const SpinSystem& sys, const DensityMatrix& pps, double alpha,
                            const ProgrammeOptions& opts) {
    return apply_programme(sys, mixed_state_programme(alpha), pps, opts);
}

DensityMatrix deviation_spin_state(const DensityMatrix& rho, const PpsStructure& pps) {
    if (!(pps.delta > 0.0)) {
        throw std::invalid_argument("deviation_spin_state: reference has no pseudo-pure excess");
    }
    const SpinBranch branch = partial_trace_spin(rho, 0);
    const ComplexMatrix dev = (branch.block - pps.background * identity_matrix(2)) / pps.delta;
    return DensityMatrix(dev);
}

// ---------------------------------------------------------------------------
// Interferometer

PulseProgramme hadamard_pulses() {
    return PulseProgramme({PulseEvent::rf(Target::H, 0.5 * kPi, kPhaseY),
                           PulseEvent::rf(Target::H, kPi, kPhaseX)});
}

PulseProgramme mirror_pulses() {
    return PulseProgramme({PulseEvent::rf(Target::H, kPi, kPhaseX)});
}

PulseProgramme controlled_phase_pulses(double chi) {
    return PulseProgramme({PulseEvent::rf(Target::H, 0.5 * kPi, kPhaseX),
                           PulseEvent::rf(Target::H, chi, kPhaseYBar),
                           PulseEvent::rf(Target::H, 0.5 * kPi, kPhaseXBar)});
}

PulseProgramme slice_pulses(double phi, double theta) {
    return PulseProgramme({PulseEvent::transition(kPi, theta),
                           PulseEvent::transition(kPi, theta + kPi + phi)});
}

PulseProgramme slice_circuit_pulses(double phi, double theta, double tau) {
    // The selective pulses are hard here, so the coupling evolution they would
    // span is the second tau delay; the proton pi pulses refocus both halves.
    return PulseProgramme({PulseEvent::delay(tau), PulseEvent::rf(Target::H, kPi, kPhaseX)})
        .then(slice_pulses(phi, theta))
        .then(PulseProgramme({PulseEvent::delay(tau), PulseEvent::rf(Target::H, kPi, kPhaseXBar)}));
}

PulseProgramme interferometer_programme(const InterferometerSettings& s) {
    return hadamard_pulses()
        .then(controlled_phase_pulses(s.chi))
        .then(slice_circuit_pulses(s.phi_slice, s.theta, s.tau))
        .then(mirror_pulses())
        .then(hadamard_pulses())
        .then(PulseProgramme({PulseEvent::gradient()}));
}

DensityMatrix run_pulse_programme(const SpinSystem& sys, const DensityMatrix& rho0,
                                  const InterferometerSettings& s, const ProgrammeOptions& opts) {
    PulseProgramme prog = interferometer_programme(s);
    if (s.alpha) {
        prog = mixed_state_programme(*s.alpha).then(prog);
    }
    return apply_programme(sys, prog, rho0, opts);
}

// ---------------------------------------------------------------------------
// Readout

std::array<double, 2> line_intensities(const DensityMatrix& rho_diag, Target read_spin) {
    if (rho_diag.dim() != 4) {
        throw DimensionError("line_intensities: expected a two-spin state");
    }
    ComplexMatrix off = rho_diag.matrix();
    off.diagonal().setZero();
    if (max_abs(off) > kPpsOffDiagonalTol) {
        throw std::invalid_argument("line_intensities: state is not diagonal; apply a gradient first");
    }
    const Eigen::VectorXd p = rho_diag.diagonal();
    switch (read_spin) {
        case Target::H:
            return {p(0) - p(2), p(1) - p(3)};
        case Target::C:
            return {p(0) - p(1), p(2) - p(3)};
        case Target::Both:
            break;
    }
    throw std::invalid_argument("line_intensities: read one spin at a time");
}

std::array<double, 4> tomograph_diagonal(const std::array<double, 2>& h_lines,
                                         const std::array<double, 2>& c_lines, double trace) {
    Eigen::Matrix<double, 5, 4> a;
    // clang-format off
    a << 1, 0, -1,  0,
         0, 1,  0, -1,
         1, -1, 0,  0,
         0, 0,  1, -1,
         1, 1,  1,  1;
    // clang-format on
    Eigen::Matrix<double, 5, 1> b;
    b << h_lines[0], h_lines[1], c_lines[0], c_lines[1], trace;
    const Eigen::Vector4d p = a.colPivHouseholderQr().solve(b);
    const double residual = (a * p - b).norm();
    if (!std::isfinite(residual) || residual > kTomographyResidualTol) {
        throw TomographyError("tomography: inconsistent line intensities (residual " +
                              std::to_string(residual) + ")");
    }
    return {p(0), p(1), p(2), p(3)};
}

}  // namespace mixphase::nmr
