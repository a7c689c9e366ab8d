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

#include "mixphase/harness.hpp"

#include "mixphase/interferometer.hpp"
#include "mixphase/mixed_phase.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace mixphase::harness {

namespace {

constexpr double kSingularPurity = 1e-12;

// Runs fn(i) for i in [0, n) on a few worker threads. Results land at their
// own index; the first failing index (in index order) is rethrown.
template <typename Fn>
auto parallel_map(std::size_t n, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
    using T = decltype(fn(std::size_t{}));
    std::vector<std::optional<T>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(n, 1));
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n; i += workers) {
                    try {
                        slots[i].emplace(fn(i));
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
    }
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i]) {
            std::rethrow_exception(errors[i]);
        }
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

nmr::ProgrammeOptions preparation_options(const nmr::ProgrammeOptions& opts) {
    nmr::ProgrammeOptions prep = opts;
    prep.offsets = {};
    return prep;
}

double purity_of(double alpha_deg) {
    const double r = std::cos(deg2rad(alpha_deg));
    return std::abs(r) < kSingularPurity ? 0.0 : r;
}

void require_alpha(double alpha_deg) {
    if (!(alpha_deg >= 0.0 && alpha_deg <= 90.0)) {
        throw std::invalid_argument("alpha must lie in [0, 90] degrees");
    }
}

}  // namespace

std::string_view to_string(Engine engine) {
    switch (engine) {
        case Engine::Gate:
            return "gate";
        case Engine::Pulse:
            return "pulse";
        case Engine::Analytic:
            return "analytic";
    }
    return "?";
}

Engine parse_engine(std::string_view name) {
    if (name == "gate") return Engine::Gate;
    if (name == "pulse") return Engine::Pulse;
    if (name == "analytic") return Engine::Analytic;
    throw std::invalid_argument("unknown engine '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Simulator

Simulator::Simulator(EngineOptions opts)
    : opts_(std::move(opts)),
      pps_state_(nmr::prepare_pps(opts_.system, preparation_options(opts_.programme))),
      pps_(nmr::analyze_pps(pps_state_)) {}

UnitaryMatrix loop_unitary(double omega_deg) {
    const double half = 0.5 * deg2rad(omega_deg);
    ComplexMatrix u = ComplexMatrix::Zero(2, 2);
    u(0, 0) = std::exp(-kI * half);
    u(1, 1) = std::exp(kI * half);
    return UnitaryMatrix(u);
}

DensityMatrix spin_input(double alpha_deg) {
    require_alpha(alpha_deg);
    return bloch_to_density(BlochVector(0.0, 0.0, purity_of(alpha_deg)));
}

DensityMatrix Simulator::pulse_state(double omega_deg, double alpha_deg, double chi_deg) const {
    require_alpha(alpha_deg);
    nmr::InterferometerSettings s;
    s.chi = deg2rad(chi_deg);
    s.phi_slice = 0.5 * deg2rad(omega_deg);
    s.theta = deg2rad(opts_.theta_deg);
    s.tau = opts_.tau;
    s.alpha = deg2rad(alpha_deg);
    return nmr::run_pulse_programme(opts_.system, pps_state_, s, opts_.programme);
}

double Simulator::intensity(Engine engine, double omega_deg, double alpha_deg, double chi_deg) const {
    switch (engine) {
        case Engine::Gate: {
            const interferometer::CircuitSpec spec{deg2rad(chi_deg), loop_unitary(omega_deg),
                                                   spin_input(alpha_deg)};
            return interferometer::run_interferometer(spec).intensity;
        }
        case Engine::Analytic:
            return interferometer::analytic_intensity(deg2rad(chi_deg), loop_unitary(omega_deg),
                                                      spin_input(alpha_deg));
        case Engine::Pulse: {
            const DensityMatrix rho = pulse_state(omega_deg, alpha_deg, chi_deg);
            const auto h = nmr::line_intensities(rho, nmr::Target::H);
            const auto c = nmr::line_intensities(rho, nmr::Target::C);
            const auto p = nmr::tomograph_diagonal(h, c, rho.matrix().trace().real());
            return (p[0] + p[1] - 2.0 * pps_.background) / pps_.delta;
        }
    }
    throw std::invalid_argument("unknown engine");
}

// ---------------------------------------------------------------------------
// Sweeps

void SweepSpec::validate() const {
    const std::set<double> distinct(chi_grid_deg.begin(), chi_grid_deg.end());
    if (distinct.size() < 3) {
        throw std::invalid_argument("sweep: chi grid needs at least 3 distinct points");
    }
    require_alpha(alpha_deg);
    if (!std::isfinite(omega_deg)) {
        throw std::invalid_argument("sweep: omega must be finite");
    }
    if (fit_window_deg && fit_window_deg->first > fit_window_deg->second) {
        throw std::invalid_argument("sweep: fit window is reversed");
    }
}

InterferencePattern sweep(const SweepSpec& spec, const Simulator& sim) {
    spec.validate();
    auto points = parallel_map(spec.chi_grid_deg.size(), [&](std::size_t i) {
        const double chi = spec.chi_grid_deg[i];
        try {
            return PatternPoint{chi, sim.intensity(spec.engine, spec.omega_deg, spec.alpha_deg, chi)};
        } catch (const std::exception& e) {
            throw SweepError(chi, e.what());
        }
    });
    return InterferencePattern(std::move(points));
}

InterferencePattern sweep(const SweepSpec& spec) {
    return sweep(spec, Simulator{});
}

FringeFit fit_sweep(const SweepSpec& spec, const InterferencePattern& pattern) {
    if (spec.fit_window_deg) {
        return fit_fringe(pattern.window(spec.fit_window_deg->first, spec.fit_window_deg->second));
    }
    return fit_fringe(pattern);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        return {lo};
    }
    std::vector<double> out(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lo + step * static_cast<double>(i);
    }
    out.back() = hi;
    return out;
}

std::vector<double> full_pattern_grid() { return linspace(-360.0, 360.0, 37); }

std::vector<double> shift_fit_grid() { return linspace(-90.0, 0.0, 10); }

namespace {

std::vector<double> alphas_for_purities(const std::vector<double>& rs) {
    std::vector<double> out;
    out.reserve(rs.size());
    for (double r : rs) {
        out.push_back(rad2deg(std::acos(std::clamp(r, 0.0, 1.0))));
    }
    // acos(0) is 90 to within rounding; pin it.
    for (double& a : out) {
        if (std::abs(a - 90.0) < 1e-12) a = 90.0;
    }
    return out;
}

}  // namespace

std::vector<double> default_shift_alphas() {
    return alphas_for_purities(linspace(0.0, 1.0, 6));
}

std::vector<double> default_visibility_alphas(double omega_deg) {
    std::vector<double> alphas = alphas_for_purities(linspace(0.0, 1.0, 9));
    if (std::abs(wrap_deg(omega_deg - 180.0)) < 1e-9) {
        std::replace(alphas.begin(), alphas.end(), 90.0, 89.0);
    }
    return alphas;
}

namespace {

void reject_singular(double omega_deg, double alpha_deg) {
    const double r = purity_of(alpha_deg);
    const double half = 0.5 * deg2rad(omega_deg);
    if (std::hypot(r * std::sin(half), std::cos(half)) < mixedphase::kUndefinedPhase) {
        throw mixedphase::UndefinedPhaseError(
            "Omega = 180 deg with r = 0 is singular: the shift is undefined");
    }
}

}  // namespace

std::vector<CurveRow> shift_curve(Engine engine, double omega_deg,
                                  const std::vector<double>& alphas_deg, const Simulator& sim,
                                  const std::vector<double>& chi_grid_deg) {
    const std::vector<double> grid = chi_grid_deg.empty() ? shift_fit_grid() : chi_grid_deg;
    for (double a : alphas_deg) {
        require_alpha(a);
        reject_singular(omega_deg, a);
    }
    return parallel_map(alphas_deg.size(), [&](std::size_t i) {
        const double alpha = alphas_deg[i];
        const double r = purity_of(alpha);
        SweepSpec spec{engine, omega_deg, alpha, grid, std::nullopt};
        const FringeFit fit = fit_fringe(sweep(spec, sim));
        const double theory =
            rad2deg(mixedphase::shift_formula(mixedphase::SolidAngleLoop(deg2rad(omega_deg), r)));
        const double fitted = unwrap_near(fit.shift_deg, theory);
        return CurveRow{alpha, r, fitted, theory, std::abs(fitted - theory)};
    });
}

std::vector<CurveRow> visibility_curve(Engine engine, double omega_deg,
                                       const std::vector<double>& alphas_deg, const Simulator& sim,
                                  const std::vector<double>& chi_grid_deg) {
    const std::vector<double> grid = chi_grid_deg.empty() ? shift_fit_grid() : chi_grid_deg;
    for (double a : alphas_deg) {
        require_alpha(a);
        reject_singular(omega_deg, a);
    }
    return parallel_map(alphas_deg.size(), [&](std::size_t i) {
        const double alpha = alphas_deg[i];
        const double r = purity_of(alpha);
        SweepSpec spec{engine, omega_deg, alpha, grid, std::nullopt};
        const FringeFit fit = fit_fringe(sweep(spec, sim));
        const double theory =
            mixedphase::visibility_formula(mixedphase::SolidAngleLoop(deg2rad(omega_deg), r));
        return CurveRow{alpha, r, fit.visibility, theory, std::abs(fit.visibility - theory)};
    });
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::all_passed() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const ValidationEntry& e) { return e.passed; });
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    os.precision(3);
    for (const auto& e : entries) {
        os << (e.passed ? "PASS " : "FAIL ") << e.name << "  worst=" << std::scientific << e.worst
           << " tol=" << e.tolerance << std::defaultfloat;
        if (!e.detail.empty()) {
            os << "  (" << e.detail << ")";
        }
        os << '\n';
    }
    const auto failed = std::count_if(entries.begin(), entries.end(),
                                      [](const ValidationEntry& e) { return !e.passed; });
    os << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << '\n';
    return os.str();
}

namespace {

ValidationEntry upper_bound_entry(std::string name, double worst, double tol, std::string detail = {}) {
    return {std::move(name), std::isfinite(worst) && worst <= tol, worst, tol, std::move(detail)};
}

ValidationEntry failed_entry(std::string name, double tol, const std::string& why) {
    return {std::move(name), false, std::numeric_limits<double>::infinity(), tol, why};
}

}  // namespace

ValidationReport validate_all(const ValidationConfig& config) {
    if (config.alphas_deg.empty() || config.omegas_deg.empty() || config.chis_deg.empty()) {
        throw std::invalid_argument("validate: alpha, omega and chi grids must be non-empty");
    }
    if (config.transport_steps < 2) {
        throw std::invalid_argument("validate: transport path needs at least 2 steps");
    }
    ValidationReport report;
    auto& out = report.entries;

    // Pseudo-pure preparation gates every pulse-level check.
    std::optional<Simulator> sim;
    try {
        sim.emplace(config.engine);
        const nmr::PpsStructure& s = sim->pps();
        out.push_back(upper_bound_entry("pps-structure", s.background_spread, nmr::kPpsBackgroundTol,
                                        "delta=" + std::to_string(s.delta)));
    } catch (const std::exception& e) {
        out.push_back(failed_entry("pps-structure", nmr::kPpsBackgroundTol, e.what()));
    }

    // Gate engine against the trace formula, and pulse engine against gate.
    {
        struct Triple {
            double alpha, omega, chi;
        };
        std::vector<Triple> grid;
        for (double a : config.alphas_deg)
            for (double o : config.omegas_deg)
                for (double c : config.chis_deg) grid.push_back({a, o, c});
        const Simulator* sp = sim ? &*sim : nullptr;
        try {
            const auto diffs = parallel_map(grid.size(), [&](std::size_t i) {
                const auto& t = grid[i];
                const double gate = interferometer::run_interferometer(
                                        {deg2rad(t.chi), loop_unitary(t.omega), spin_input(t.alpha)})
                                        .intensity;
                const double analytic = interferometer::analytic_intensity(
                    deg2rad(t.chi), loop_unitary(t.omega), spin_input(t.alpha));
                const double pulse =
                    sp ? sp->intensity(Engine::Pulse, t.omega, t.alpha, t.chi) : std::nan("");
                return std::pair{std::abs(gate - analytic), std::abs(pulse - gate)};
            });
            double worst_ga = 0.0;
            double worst_pg = 0.0;
            for (const auto& [ga, pg] : diffs) {
                worst_ga = std::max(worst_ga, ga);
                worst_pg = std::isnan(pg) ? pg : std::max(worst_pg, pg);
            }
            const std::string n = std::to_string(grid.size()) + " triples";
            out.push_back(upper_bound_entry("engine-gate-vs-analytic", worst_ga, 1e-10, n));
            if (sp) {
                out.push_back(upper_bound_entry("engine-pulse-vs-gate", worst_pg, 1e-8, n));
            } else {
                out.push_back(failed_entry("engine-pulse-vs-gate", 1e-8, "no pseudo-pure state"));
            }
        } catch (const std::exception& e) {
            out.push_back(failed_entry("engine-equivalence", 1e-8, e.what()));
        }
    }

    // Branch sums against the closed forms.
    {
        double worst = 0.0;
        for (int ri = 0; ri <= 10; ++ri) {
            const double r = 0.1 * ri;
            for (int oi = 0; oi <= 12; ++oi) {
                const double omega = deg2rad(30.0 * oi);
                if (oi == 6 && ri == 0) continue;
                const auto branches = mixedphase::pure_branch_phases(omega, r);
                const mixedphase::SolidAngleLoop loop(omega, r);
                const double dphi =
                    wrap_deg(rad2deg(mixedphase::mixed_phase(branches) - mixedphase::shift_formula(loop)));
                worst = std::max(worst, deg2rad(std::abs(dphi)));
                worst = std::max(worst, std::abs(mixedphase::mixed_visibility(branches) -
                                                 mixedphase::visibility_formula(loop)));
            }
        }
        out.push_back(upper_bound_entry("consistency-triangle", worst, 1e-10));
    }

    // Parallel transport on the discretized slice loop, with a z rotation as
    // the negative control.
    try {
        const DensityMatrix rho = bloch_to_density(BlochVector(0.0, 0.0, 0.5));
        const auto path = mixedphase::slice_circuit_path(deg2rad(60.0), config.transport_steps);
        const auto v = mixedphase::parallel_transport_violation(rho, path);
        out.push_back(upper_bound_entry("transport-slice-loop",
                                        std::max(v.per_eigenstate[0], v.per_eigenstate[1]), 1e-6,
                                        std::to_string(config.transport_steps) + " steps"));
        const auto ctrl = mixedphase::parallel_transport_violation(
            rho, mixedphase::axis_rotation_path({0, 0, 1}, 2.0 * kPi, config.transport_steps));
        const double c = std::min(ctrl.per_eigenstate[0], ctrl.per_eigenstate[1]);
        out.push_back({"transport-negative-control", c >= 0.1, c, 0.1, "must be >= tolerance"});
        const double gp = mixedphase::geometric_phase_of_path(rho, path);
        const double expected = mixedphase::shift_formula({deg2rad(120.0), 0.5});
        out.push_back(upper_bound_entry("geometric-phase-of-loop", std::abs(gp - expected), 1e-10));
    } catch (const std::exception& e) {
        out.push_back(failed_entry("parallel-transport", 1e-6, e.what()));
    }

    // Pulse-built blocks against their gate counterparts, up to global phase.
    try {
        const nmr::SpinSystem& sys = config.engine.system;
        const ComplexMatrix one = identity_matrix(2);
        const ComplexMatrix mirror = tensor(pauli_x(), one);
        double worst = 0.0;
        auto check = [&](const nmr::PulseProgramme& prog, const ComplexMatrix& gate) {
            worst = std::max(worst, 1.0 - gate_fidelity(nmr::programme_propagator(sys, prog).matrix(), gate));
        };
        check(nmr::hadamard_pulses(), tensor(interferometer::hadamard().matrix(), one));
        check(nmr::mirror_pulses(), mirror);
        for (double chi : config.chis_deg) {
            // The pulse phase gate marks the |1> path; relabel through the mirror.
            const ComplexMatrix path_gate = interferometer::controlled_block(deg2rad(chi), UnitaryMatrix::identity(2)).matrix();
            check(nmr::controlled_phase_pulses(deg2rad(chi)), mirror * path_gate * mirror);
        }
        for (double omega : config.omegas_deg) {
            const ComplexMatrix cu = interferometer::controlled_block(0.0, loop_unitary(omega)).matrix();
            const double phi = 0.5 * deg2rad(omega);
            const double theta = deg2rad(config.engine.theta_deg);
            check(nmr::slice_pulses(phi, theta), cu);
            check(nmr::slice_circuit_pulses(phi, theta, config.engine.tau), mirror * cu * mirror);
        }
        out.push_back(upper_bound_entry("pulse-gate-fidelity", worst, 1e-10, "1 - fidelity"));
    } catch (const std::exception& e) {
        out.push_back(failed_entry("pulse-gate-fidelity", 1e-10, e.what()));
    }

    if (sim) {
        // Mixed-state purity after (alpha)_x on C and a gradient.
        try {
            double worst = 0.0;
            for (double a : {0.0, 30.0, 45.0, 60.0, 90.0}) {
                const DensityMatrix mixed = nmr::prepare_mixed(config.engine.system, sim->pps_state(),
                                                               deg2rad(a), config.engine.programme);
                const double r = density_to_bloch(nmr::deviation_spin_state(mixed, sim->pps())).length();
                worst = std::max(worst, std::abs(r - std::cos(deg2rad(a))));
            }
            out.push_back(upper_bound_entry("mixed-state-purity", worst, 1e-10));
        } catch (const std::exception& e) {
            out.push_back(failed_entry("mixed-state-purity", 1e-10, e.what()));
        }

        // Injected Zeeman offsets during the echo delays must not move the fringe.
        try {
            EngineOptions perturbed = config.engine;
            perturbed.programme.offsets = {37.0, -23.0};
            const Simulator sim_off(perturbed);
            double worst = 0.0;
            for (double omega : {60.0, 120.0, 180.0}) {
                const SweepSpec spec{Engine::Pulse, omega, 60.0, shift_fit_grid(), std::nullopt};
                const double a = fit_fringe(sweep(spec, *sim)).shift_deg;
                const double b = fit_fringe(sweep(spec, sim_off)).shift_deg;
                worst = std::max(worst, std::abs(wrap_deg(a - b)));
            }
            out.push_back(upper_bound_entry("spin-echo-shift", worst, 1e-8, "degrees"));
        } catch (const std::exception& e) {
            out.push_back(failed_entry("spin-echo-shift", 1e-8, e.what()));
        }
    } else {
        out.push_back(failed_entry("mixed-state-purity", 1e-10, "no pseudo-pure state"));
        out.push_back(failed_entry("spin-echo-shift", 1e-8, "no pseudo-pure state"));
    }

    // Tomography round trip on random diagonal states.
    try {
        std::mt19937_64 rng(20260101);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            std::array<double, 4> p{u(rng), u(rng), u(rng), u(rng)};
            const double sum = p[0] + p[1] + p[2] + p[3];
            ComplexMatrix m = ComplexMatrix::Zero(4, 4);
            for (int k = 0; k < 4; ++k) {
                p[k] /= sum;
                m(k, k) = p[k];
            }
            const DensityMatrix rho(m);
            const auto back = nmr::tomograph_diagonal(nmr::line_intensities(rho, nmr::Target::H),
                                                      nmr::line_intensities(rho, nmr::Target::C), 1.0);
            for (int k = 0; k < 4; ++k) {
                worst = std::max(worst, std::abs(back[k] - rho.diagonal()(k)));
            }
        }
        out.push_back(upper_bound_entry("tomography-round-trip", worst, 1e-12));
    } catch (const std::exception& e) {
        out.push_back(failed_entry("tomography-round-trip", 1e-12, e.what()));
    }

    // Fringe fitter on synthetic cosines.
    try {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double nu = u(rng);
            const double phi = -180.0 + 360.0 * u(rng);
            const double a0 = 0.2 + 0.3 * u(rng);
            const double lo = -360.0 + 270.0 * u(rng);
            const double span = 90.0 + 270.0 * u(rng);
            const std::size_t n = 3 + static_cast<std::size_t>(35 * u(rng));
            std::vector<PatternPoint> pts;
            for (double chi : linspace(lo, lo + span, n)) {
                pts.push_back({chi, a0 * (1.0 + nu * std::cos(deg2rad(chi - phi)))});
            }
            const FringeFit fit = fit_fringe(InterferencePattern(std::move(pts)));
            worst = std::max({worst, std::abs(fit.visibility - nu), std::abs(fit.offset - a0)});
            if (nu > 1e-3) {
                worst = std::max(worst, std::abs(wrap_deg(fit.shift_deg - phi)));
            }
        }
        out.push_back(upper_bound_entry("fringe-fit-recovery", worst, 1e-8));
    } catch (const std::exception& e) {
        out.push_back(failed_entry("fringe-fit-recovery", 1e-8, e.what()));
    }

    return report;
}

}  // namespace mixphase::harness
