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

#include "mixphase/fringe_fit.hpp"
#include "mixphase/nmr.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

/**
 * Experiment driver: chi sweeps on one of three engines, fringe fitting, the
 * shift-vs-purity and visibility-vs-purity curves, and the validation suite.
 *
 * Angles at this level are degrees. The spin-qubit purity is r = cos(alpha)
 * and the slice loop encloses Omega.
 */
namespace mixphase::harness {

enum class Engine { Gate, Pulse, Analytic };

[[nodiscard]] std::string_view to_string(Engine engine);
/// Accepts "gate", "pulse" and "analytic".
[[nodiscard]] Engine parse_engine(std::string_view name);

struct EngineOptions {
    nmr::SpinSystem system{};
    nmr::ProgrammeOptions programme{};
    double theta_deg = 0.0;  ///< phase of the first selective pulse
    double tau = 0.01;       ///< echo delay, s
};

/// Evaluates single fringe points. The pulse engine starts from a pseudo-pure
/// state prepared once at construction and reports p(|00>) + p(|01>) of the
/// deviation part, normalized by the pseudo-pure excess.
class Simulator {
  public:
    /// Throws nmr::PreparationError if the pseudo-pure state cannot be made.
    explicit Simulator(EngineOptions opts = {});

    [[nodiscard]] double intensity(Engine engine, double omega_deg, double alpha_deg,
                                   double chi_deg) const;

    [[nodiscard]] const EngineOptions& options() const noexcept { return opts_; }
    [[nodiscard]] const nmr::PpsStructure& pps() const noexcept { return pps_; }
    [[nodiscard]] const DensityMatrix& pps_state() const noexcept { return pps_state_; }

    /// Final pulse-engine state before readout normalization.
    [[nodiscard]] DensityMatrix pulse_state(double omega_deg, double alpha_deg, double chi_deg) const;

  private:
    EngineOptions opts_;
    DensityMatrix pps_state_;
    nmr::PpsStructure pps_;
};

/// Spin-qubit loop unitary diag(e^{-i Omega/2}, e^{+i Omega/2}).
[[nodiscard]] UnitaryMatrix loop_unitary(double omega_deg);
/// Spin-qubit input state with Bloch vector (0, 0, cos alpha).
[[nodiscard]] DensityMatrix spin_input(double alpha_deg);

struct SweepSpec {
    Engine engine = Engine::Gate;
    double omega_deg = 0.0;
    double alpha_deg = 0.0;
    std::vector<double> chi_grid_deg;
    std::optional<std::pair<double, double>> fit_window_deg;

    /// Needs at least three distinct chi values.
    void validate() const;
};

class SweepError : public std::runtime_error {
  public:
    SweepError(double chi_deg, const std::string& what)
        : std::runtime_error("chi = " + std::to_string(chi_deg) + " deg: " + what), chi_deg_(chi_deg) {}
    [[nodiscard]] double chi_deg() const noexcept { return chi_deg_; }

  private:
    double chi_deg_;
};

[[nodiscard]] InterferencePattern sweep(const SweepSpec& spec, const Simulator& sim);
[[nodiscard]] InterferencePattern sweep(const SweepSpec& spec);

/// Fits the spec's fit window when one is set, otherwise the whole pattern.
[[nodiscard]] FringeFit fit_sweep(const SweepSpec& spec, const InterferencePattern& pattern);

[[nodiscard]] std::vector<double> linspace(double lo, double hi, std::size_t n);

// Grids used for the published figures.
[[nodiscard]] std::vector<double> full_pattern_grid();  ///< 37 points in [-360, 360]
[[nodiscard]] std::vector<double> shift_fit_grid();     ///< 10 points in [-90, 0]
[[nodiscard]] std::vector<double> default_shift_alphas();  ///< r = 0, 0.2, ..., 1
/// r = 0, 0.125, ..., 1; alpha = 89 replaces 90 for Omega = 180.
[[nodiscard]] std::vector<double> default_visibility_alphas(double omega_deg);

struct CurveRow {
    double alpha_deg;
    double r;
    double fitted;
    double theory;
    double abs_err;
};

/// Fitted fringe shift vs purity over the 10-point window, compared with the
/// closed form. Fitted shifts are unwrapped to the branch nearest the theory.
/// Rejects Omega = 180 with r = 0. An empty `chi_grid_deg` selects
/// shift_fit_grid().
[[nodiscard]] std::vector<CurveRow> shift_curve(Engine engine, double omega_deg,
                                                const std::vector<double>& alphas_deg,
                                                const Simulator& sim,
                                                const std::vector<double>& chi_grid_deg = {});

/// Fitted visibility vs purity, by default over the full 37-point pattern.
[[nodiscard]] std::vector<CurveRow> visibility_curve(Engine engine, double omega_deg,
                                                     const std::vector<double>& alphas_deg,
                                                     const Simulator& sim,
                                                     const std::vector<double>& chi_grid_deg = {});

// ---------------------------------------------------------------------------
// Validation

struct ValidationConfig {
    std::vector<double> alphas_deg{0, 15, 30, 45, 60, 75, 90};
    std::vector<double> omegas_deg{0, 30, 60, 90, 120, 150, 180, 210, 240, 270, 300, 330, 360};
    std::vector<double> chis_deg{-300, -180, -90, -40, 0, 45, 135, 270};
    std::size_t transport_steps = 10000;
    EngineOptions engine{};
};

struct ValidationEntry {
    std::string name;
    bool passed;
    double worst;       ///< worst-case deviation observed
    double tolerance;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationEntry> entries;

    [[nodiscard]] bool all_passed() const;
    [[nodiscard]] std::string to_string() const;
};

/// Runs the invariant suite. Failures become report entries; an empty grid
/// throws std::invalid_argument.
[[nodiscard]] ValidationReport validate_all(const ValidationConfig& config = {});

}  // namespace mixphase::harness
