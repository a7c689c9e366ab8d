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

// Acceptance checks AC1-AC11. Prints one line per criterion and exits
// non-zero if any fails.

#include "mixphase/harness.hpp"
#include "mixphase/mixed_phase.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>

using namespace mixphase;
using namespace mixphase::harness;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void run(const char* id, const char* title, const std::function<Outcome()>& body) {
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %s %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

DensityMatrix z_state(double z) { return bloch_to_density(BlochVector(0, 0, z)); }

}  // namespace

int main() {
    const Simulator sim;

    run("AC1", "pure-state fringe shift", [&] {
        double worst = 0.0;
        for (Engine e : {Engine::Gate, Engine::Pulse}) {
            for (auto [omega, expected] : {std::pair{180.0, -90.0}, std::pair{0.0, 0.0}}) {
                const SweepSpec spec{e, omega, 0.0, full_pattern_grid(), std::nullopt};
                const double s = fit_sweep(spec, sweep(spec, sim)).shift_deg;
                worst = std::max(worst, std::abs(wrap_deg(s - expected)));
            }
        }
        return Outcome{worst <= 0.01, fmt("max |shift error| = %.3g deg (tol 0.01)", worst)};
    });

    run("AC2", "shift vs purity", [&] {
        double worst_exact = 0.0, worst_pulse = 0.0;
        for (double omega : {60.0, 90.0, 120.0}) {
            for (Engine e : {Engine::Gate, Engine::Analytic, Engine::Pulse}) {
                const auto rows = shift_curve(e, omega, default_shift_alphas(), sim);
                double w = 0.0;
                for (const auto& r : rows) w = std::max(w, r.abs_err);
                // Endpoints against 0 and -Omega/2 directly.
                w = std::max(w, std::abs(rows.front().fitted));
                w = std::max(w, std::abs(rows.back().fitted + 0.5 * omega));
                double& slot = e == Engine::Pulse ? worst_pulse : worst_exact;
                slot = std::max(slot, w);
            }
        }
        return Outcome{worst_exact <= 0.01 && worst_pulse <= 0.05,
                       fmt("gate/analytic %.3g deg (tol 0.01), pulse %.3g deg (tol 0.05)", worst_exact, worst_pulse)};
    });

    run("AC3", "visibility vs purity", [&] {
        double worst = 0.0, span360 = 0.0, worst180 = 0.0;
        for (double omega : {120.0, 180.0, 360.0}) {
            for (Engine e : {Engine::Gate, Engine::Analytic, Engine::Pulse}) {
                const auto rows = visibility_curve(e, omega, default_visibility_alphas(omega), sim);
                double lo = 1e9, hi = -1e9;
                for (const auto& r : rows) {
                    worst = std::max(worst, r.abs_err);
                    lo = std::min(lo, r.fitted);
                    hi = std::max(hi, r.fitted);
                    if (omega == 180.0) worst180 = std::max(worst180, std::abs(r.fitted - r.r));
                    if (omega == 360.0) span360 = std::max(span360, std::abs(r.fitted - 1.0));
                }
                if (omega == 360.0) span360 = std::max(span360, hi - lo);
            }
        }
        return Outcome{worst <= 1e-4 && span360 <= 1e-6 && worst180 <= 1e-4,
                       fmt("max err %.3g (tol 1e-4), Omega=360 span %.3g (tol 1e-6)", worst, span360) +
                           fmt(", Omega=180 max|nu-r| %.3g (tol 1e-4)", worst180)};
    });

    run("AC4", "engine equivalence", [&] {
        const ValidationConfig cfg;
        std::size_t n = 0;
        double pg = 0.0, ga = 0.0;
        for (double a : cfg.alphas_deg)
            for (double o : cfg.omegas_deg)
                for (double c : cfg.chis_deg) {
                    const double g = sim.intensity(Engine::Gate, o, a, c);
                    pg = std::max(pg, std::abs(sim.intensity(Engine::Pulse, o, a, c) - g));
                    ga = std::max(ga, std::abs(g - sim.intensity(Engine::Analytic, o, a, c)));
                    ++n;
                }
        return Outcome{n >= 500 && pg <= 1e-8 && ga <= 1e-10,
                       std::to_string(n) + " triples, " +
                           fmt("|pulse-gate| %.3g (tol 1e-8), |gate-analytic| %.3g (tol 1e-10)", pg, ga)};
    });

    run("AC5", "consistency triangle", [&] {
        double worst = 0.0;
        std::size_t n = 0;
        for (int oi = 0; oi <= 24; ++oi) {
            const double omega = deg2rad(15.0 * oi);
            for (int ri = 0; ri <= 20; ++ri) {
                const double r = 0.05 * ri;
                const mixedphase::SolidAngleLoop loop(omega, r);
                const auto b = mixedphase::pure_branch_phases(omega, r);
                worst = std::max(worst, std::abs(mixedphase::mixed_visibility(b) - mixedphase::visibility_formula(loop)));
                if (oi == 12 && ri == 0) continue;
                worst = std::max(worst, std::abs(std::remainder(
                                            mixedphase::mixed_phase(b) - mixedphase::shift_formula(loop), 2 * kPi)));
                ++n;
            }
        }
        return Outcome{worst <= 1e-10, std::to_string(n) + " (r, Omega) points, " + fmt("max dev %.3g (tol 1e-10)", worst)};
    });

    run("AC6", "parallel transport", [&] {
        double worst = 0.0;
        for (double r : {0.2, 0.5, 0.9, 1.0}) {
            for (double phi_deg : {30.0, 60.0, 90.0}) {
                const auto v = mixedphase::parallel_transport_violation(
                    z_state(r), mixedphase::slice_circuit_path(deg2rad(phi_deg), 10000));
                worst = std::max({worst, v.per_eigenstate[0], v.per_eigenstate[1]});
            }
        }
        const auto ctrl = mixedphase::parallel_transport_violation(
            z_state(0.5), mixedphase::axis_rotation_path({0, 0, 1}, deg2rad(120.0), 10000));
        const double c = std::min(ctrl.per_eigenstate[0], ctrl.per_eigenstate[1]);
        return Outcome{worst <= 1e-6 && c >= 0.1,
                       fmt("slice loop %.3g (tol 1e-6), z-rotation control %.3g (needs >= 0.1)", worst, c)};
    });

    run("AC7", "pseudo-pure preparation", [&] {
        const nmr::PpsStructure& s = sim.pps();
        char buf[160];
        std::snprintf(buf, sizeof buf, "diagonal %.6f %.6f %.6f %.6f, spread %.3g (tol 1e-9), delta %.6f",
                      s.diagonal[0], s.diagonal[1], s.diagonal[2], s.diagonal[3], s.background_spread, s.delta);
        return Outcome{s.background_spread <= 1e-9 && s.delta > 0.0, buf};
    });

    run("AC8", "mixed-state preparation", [&] {
        const nmr::SpinSystem sys;
        double worst = 0.0;
        for (double a : {0.0, 30.0, 45.0, 60.0, 90.0}) {
            const DensityMatrix rho = nmr::prepare_mixed(sys, sim.pps_state(), deg2rad(a));
            const double len = density_to_bloch(nmr::deviation_spin_state(rho, sim.pps())).length();
            worst = std::max(worst, std::abs(len - std::cos(deg2rad(a))));
        }
        return Outcome{worst <= 1e-10, fmt("max |r - cos(alpha)| %.3g (tol 1e-10)", worst)};
    });

    run("AC9", "spin echo removes dynamical phase", [&] {
        EngineOptions opts;
        opts.programme.offsets = {37.0, -23.0};
        const Simulator offset_sim(opts);
        double worst = 0.0;
        for (double omega : {60.0, 120.0, 180.0}) {
            const SweepSpec spec{Engine::Pulse, omega, 30.0, shift_fit_grid(), std::nullopt};
            const double ref = fit_sweep(spec, sweep(spec, sim)).shift_deg;
            const double off = fit_sweep(spec, sweep(spec, offset_sim)).shift_deg;
            worst = std::max(worst, std::abs(wrap_deg(off - ref)));
        }
        return Outcome{worst <= 1e-8, fmt("max shift change %.3g deg (tol 1e-8)", worst)};
    });

    run("AC10", "tomography round trip", [&] {
        std::mt19937_64 rng(2026);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            Eigen::Vector4d p(u(rng), u(rng), u(rng), u(rng));
            p /= p.sum();
            const DensityMatrix rho(ComplexMatrix(p.cast<Complex>().asDiagonal()));
            const auto back = nmr::tomograph_diagonal(nmr::line_intensities(rho, nmr::Target::H),
                                                      nmr::line_intensities(rho, nmr::Target::C), 1.0);
            for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(back[i] - p(i)));
        }
        return Outcome{worst <= 1e-12, fmt("1000 states, max population error %.3g (tol 1e-12)", worst)};
    });

    run("AC11", "fringe fitter recovery", [&] {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const double a0 = 0.2 + 0.3 * u(rng);
            const double nu = 0.05 + 0.95 * u(rng);
            const double phi = -180.0 + 360.0 * u(rng);
            const int n = 5 + static_cast<int>(40 * u(rng));
            const double lo = -360.0 + 180.0 * u(rng);
            const double hi = lo + 90.0 + 450.0 * u(rng);
            std::vector<PatternPoint> pts;
            for (double c : linspace(lo, hi, static_cast<std::size_t>(n)))
                pts.push_back({c, a0 * (1 + nu * std::cos(deg2rad(c - phi)))});
            const FringeFit f = fit_fringe(pts);
            worst = std::max({worst, std::abs(f.offset - a0), std::abs(f.visibility - nu),
                              std::abs(wrap_deg(f.shift_deg - phi))});
        }
        return Outcome{worst <= 1e-8, fmt("100 cases, max parameter error %.3g (tol 1e-8)", worst)};
    });

    std::printf("%s\n", failures == 0 ? "acceptance: all criteria passed"
                                      : (std::to_string(failures) + " criteria failed").c_str());
    return failures == 0 ? 0 : 1;
}
