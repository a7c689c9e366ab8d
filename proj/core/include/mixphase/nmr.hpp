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
#include <optional>
#include <stdexcept>
#include <vector>

/**
 * Pulse-level simulation of the two-spin NMR interferometer.
 *
 * The proton (H) is the path qubit and the carbon (C) the spin qubit, so the
 * basis ordering matches qcore: |H C> = |00>, |01>, |10>, |11>. Both spins are
 * on resonance in the doubly rotating frame. Pulses are hard (instantaneous);
 * scalar coupling acts only during explicit delays. A z-gradient is idealized
 * as removing every off-diagonal element.
 *
 * Rotation sense: a pulse of flip angle b and phase p is
 * exp(-i b (cos p sigma_x + sin p sigma_y) / 2). Phases x, y, -x, -y are 0,
 * 90, 180 and 270 degrees.
 */
namespace mixphase::nmr {

enum class Target { H, C, Both };

inline constexpr double kPhaseX = 0.0;
inline constexpr double kPhaseY = 0.5 * kPi;
inline constexpr double kPhaseXBar = kPi;
inline constexpr double kPhaseYBar = 1.5 * kPi;

/// Largest |01><10| element tolerated when a gradient is applied. A real
/// z-gradient does not dephase zero-quantum coherence, so the idealized
/// gradient is only valid when none is present.
inline constexpr double kZeroQuantumTol = 1e-12;

class PreparationError : public std::runtime_error {
  public:
    PreparationError(const std::string& what, std::array<double, 4> achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    [[nodiscard]] const std::array<double, 4>& achieved_diagonal() const noexcept { return achieved_; }

  private:
    std::array<double, 4> achieved_;
};

class ZeroQuantumError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class TomographyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SpinSystem {
    double j_coupling_hz = 209.0;
    double gamma_ratio = 4.0;  ///< gamma_H / gamma_C
    // Relaxation times in seconds. Recorded only; the simulator is coherent.
    double t1_h = 16.0;
    double t1_c = 21.0;
    double t2_h = 3.4;
    double t2_c = 0.29;

    /// Throws std::invalid_argument unless J and the gamma ratio are positive.
    void validate() const;
};

enum class EventKind { RfPulse, Delay, Gradient, TransitionPulse };

struct PulseEvent {
    EventKind kind = EventKind::Delay;
    Target target = Target::H;  ///< rf pulses only
    double flip_angle = 0.0;    ///< rad; rf and transition pulses
    double phase = 0.0;         ///< rad; rf and transition pulses
    double duration = 0.0;      ///< s; delays only

    [[nodiscard]] static PulseEvent rf(Target target, double flip_angle, double phase);
    /// Selective pulse on the |10> - |11> transition.
    [[nodiscard]] static PulseEvent transition(double flip_angle, double phase);
    [[nodiscard]] static PulseEvent delay(double seconds);
    [[nodiscard]] static PulseEvent gradient();

    friend bool operator==(const PulseEvent&, const PulseEvent&) = default;
};

class PulseProgramme {
  public:
    explicit PulseProgramme(std::vector<PulseEvent> events);

    [[nodiscard]] const std::vector<PulseEvent>& events() const noexcept { return events_; }
    [[nodiscard]] std::size_t size() const noexcept { return events_.size(); }

    [[nodiscard]] PulseProgramme then(const PulseProgramme& next) const;

    friend bool operator==(const PulseProgramme&, const PulseProgramme&) = default;

  private:
    std::vector<PulseEvent> events_;
};

/// Uniform Zeeman offsets injected during delays, in Hz. Zero in the normal
/// on-resonance model; non-zero values stand in for an uncompensated
/// dynamical phase.
struct Offsets {
    double h_hz = 0.0;
    double c_hz = 0.0;
};

struct ProgrammeOptions {
    bool gradients_enabled = true;
    Offsets offsets{};
};

// ---------------------------------------------------------------------------
// Propagators

[[nodiscard]] UnitaryMatrix rf_propagator(Target target, double flip_angle, double phase);

/// exp(-i 2 pi J t (sigma_z (x) sigma_z) / 4). Throws for t < 0.
[[nodiscard]] UnitaryMatrix j_evolution(const SpinSystem& sys, double t);

/// Free evolution during a delay: coupling plus any injected offsets.
[[nodiscard]] UnitaryMatrix free_evolution(const SpinSystem& sys, double t, const Offsets& offsets);

/// Rotation embedded in the |10>, |11> block; identity on |00>, |01>.
[[nodiscard]] UnitaryMatrix transition_pulse(double flip_angle, double phase);

/// Removes all off-diagonal elements.
[[nodiscard]] DensityMatrix gradient(const DensityMatrix& rho);

/// Product of the event propagators of a gradient-free programme.
[[nodiscard]] UnitaryMatrix programme_propagator(const SpinSystem& sys, const PulseProgramme& prog,
                                                 const Offsets& offsets = {});

/// Runs every event in order. Gradient events check for zero-quantum
/// coherence first and throw ZeroQuantumError when it is present.
[[nodiscard]] DensityMatrix apply_programme(const SpinSystem& sys, const PulseProgramme& prog,
                                            const DensityMatrix& rho,
                                            const ProgrammeOptions& opts = {});

// ---------------------------------------------------------------------------
// State preparation

/// High-temperature state 1/4 + eps (gamma_ratio sigma_z^H + sigma_z^C).
/// Defaults to half the largest eps that keeps the state positive.
[[nodiscard]] DensityMatrix thermal_state(const SpinSystem& sys,
                                          std::optional<double> epsilon = std::nullopt);

/// Spatial-averaging sequence that turns the thermal state into a |00>
/// pseudo-pure state.
[[nodiscard]] PulseProgramme pps_programme(const SpinSystem& sys);

/// Structure of a pseudo-pure state diag(p + delta, p, p, p).
struct PpsStructure {
    std::array<double, 4> diagonal;
    double background;        ///< mean of the three minority populations
    double delta;             ///< excess population of |00>
    double background_spread; ///< max - min of the three minority populations
    double max_off_diagonal;
};

inline constexpr double kPpsBackgroundTol = 1e-9;
inline constexpr double kPpsOffDiagonalTol = 1e-12;

[[nodiscard]] PpsStructure analyze_pps(const DensityMatrix& rho);
[[nodiscard]] bool is_pps(const PpsStructure& s);

/// Runs pps_programme on the thermal state. Throws PreparationError when the
/// result is not pseudo-pure.
[[nodiscard]] DensityMatrix prepare_pps(const SpinSystem& sys, const ProgrammeOptions& opts = {},
                                        std::optional<double> epsilon = std::nullopt);

/// (alpha)_x on C followed by a gradient. alpha in [0, pi/2].
[[nodiscard]] PulseProgramme mixed_state_programme(double alpha);
[[nodiscard]] DensityMatrix prepare_mixed(const SpinSystem& sys, const DensityMatrix& pps,
                                          double alpha, const ProgrammeOptions& opts = {});

/// Normalized spin-qubit state carried by the deviation part of `rho` on the
/// path-|0> branch: (block_0(rho) - background) / delta.
[[nodiscard]] DensityMatrix deviation_spin_state(const DensityMatrix& rho, const PpsStructure& pps);

// ---------------------------------------------------------------------------
// Interferometer

struct InterferometerSettings {
    double chi = 0.0;        ///< phase-shifter angle, rad
    double phi_slice = 0.0;  ///< slice-circuit phase; encloses Omega = 2 phi
    double theta = 0.0;      ///< phase of the first transition-selective pulse
    double tau = 0.01;       ///< echo delay, s
    std::optional<double> alpha;  ///< mixed-state preparation angle, rad
};

[[nodiscard]] PulseProgramme hadamard_pulses();
[[nodiscard]] PulseProgramme mirror_pulses();
[[nodiscard]] PulseProgramme controlled_phase_pulses(double chi);
/// The two transition-selective pi pulses alone.
[[nodiscard]] PulseProgramme slice_pulses(double phi, double theta);
/// Slice pulses wrapped in the proton spin echo.
[[nodiscard]] PulseProgramme slice_circuit_pulses(double phi, double theta, double tau);

/// Hadamard, controlled phase, slice circuit, mirror, Hadamard, gradient.
[[nodiscard]] PulseProgramme interferometer_programme(const InterferometerSettings& s);

/// Mixed-state preparation (when `alpha` is set) followed by the
/// interferometer programme, applied to `rho0`.
[[nodiscard]] DensityMatrix run_pulse_programme(const SpinSystem& sys, const DensityMatrix& rho0,
                                                const InterferometerSettings& s,
                                                const ProgrammeOptions& opts = {});

// ---------------------------------------------------------------------------
// Readout

/// Line intensities of one spin from a diagonal state. H lines are
/// (p00 - p10, p01 - p11); C lines are (p00 - p01, p10 - p11).
[[nodiscard]] std::array<double, 2> line_intensities(const DensityMatrix& rho_diag, Target read_spin);

inline constexpr double kTomographyResidualTol = 1e-9;

/// Least-squares populations from both spectra plus the trace constraint.
/// Throws TomographyError when the lines are mutually inconsistent.
[[nodiscard]] std::array<double, 4> tomograph_diagonal(const std::array<double, 2>& h_lines,
                                                       const std::array<double, 2>& c_lines,
                                                       double trace);

}  // namespace mixphase::nmr
