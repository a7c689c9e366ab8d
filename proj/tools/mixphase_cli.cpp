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
#include "mixphase/nmr.hpp"
#include "mixphase/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>

namespace {

using namespace mixphase;
using namespace mixphase::harness;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct CommonArgs {
    std::string engine = "gate";
    double omega = 180.0;
    double alpha = 0.0;
    std::optional<double> chi_min;
    std::optional<double> chi_max;
    std::optional<std::size_t> chi_points;
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = 0;  // reserved; every current path is deterministic
    double gamma_ratio = 4.0;
    double j_coupling = 209.0;
    bool no_gradient = false;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--engine", a.engine, "Simulation engine")
        ->check(CLI::IsMember({"gate", "pulse", "analytic"}))
        ->capture_default_str();
    cmd->add_option("--omega", a.omega, "Solid angle Omega enclosed by the loop (deg)")
        ->capture_default_str();
    cmd->add_option("--alpha", a.alpha, "Mixed-state flip angle (deg); r = cos(alpha)")
        ->check(CLI::Range(0.0, 90.0))
        ->capture_default_str();
    cmd->add_option("--chi-min", a.chi_min, "First chi grid point (deg)");
    cmd->add_option("--chi-max", a.chi_max, "Last chi grid point (deg)");
    cmd->add_option("--chi-points", a.chi_points, "Number of chi grid points");
    cmd->add_option("--out", a.out, "Output file (default: stdout)");
    cmd->add_option("--format", a.format, "Output format")
        ->check(CLI::IsMember({"csv", "svg"}))
        ->capture_default_str();
    cmd->add_option("--seed", a.seed, "Reserved; all computations are deterministic");
    cmd->add_option("--gamma-ratio", a.gamma_ratio, "gamma_H / gamma_C")->capture_default_str();
    cmd->add_option("--j", a.j_coupling, "Scalar coupling J (Hz)")->capture_default_str();
    cmd->add_flag("--no-gradient", a.no_gradient,
                  "Debug: skip gradient events (breaks pseudo-pure preparation)");
}

EngineOptions engine_options(const CommonArgs& a) {
    EngineOptions o;
    o.system.gamma_ratio = a.gamma_ratio;
    o.system.j_coupling_hz = a.j_coupling;
    o.programme.gradients_enabled = !a.no_gradient;
    return o;
}

/// Explicit chi grid from the flags, or `fallback` when none are given.
std::vector<double> chi_grid(const CommonArgs& a, std::vector<double> fallback) {
    if (!a.chi_min && !a.chi_max && !a.chi_points) {
        return fallback;
    }
    const double lo = a.chi_min.value_or(fallback.front());
    const double hi = a.chi_max.value_or(fallback.back());
    const std::size_t n = a.chi_points.value_or(fallback.size());
    if (n < 3 || !(hi > lo)) {
        throw CLI::ValidationError("chi grid", "need --chi-points >= 3 and --chi-max > --chi-min");
    }
    return linspace(lo, hi, n);
}

/// Output stream for --out, or stdout.
class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw std::runtime_error("cannot open " + path + " for writing");
            }
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

  private:
    std::unique_ptr<std::ofstream> file_;
};

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size() && !text.empty()) {
        const std::size_t comma = text.find(',', pos);
        const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!item.empty()) {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size()) {
                throw CLI::ValidationError("list", "bad number '" + item + "'");
            }
            out.push_back(v);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

int run_pattern(const CommonArgs& a) {
    const Simulator sim(engine_options(a));
    SweepSpec spec{parse_engine(a.engine), a.omega, a.alpha, chi_grid(a, full_pattern_grid()),
                   std::nullopt};
    const InterferencePattern pattern = sweep(spec, sim);
    const FringeFit fit = fit_fringe(pattern);

    Output out(a.out);
    if (a.format == "svg") {
        const UnitaryMatrix u = loop_unitary(a.omega);
        const DensityMatrix rho = spin_input(a.alpha);
        write_pattern_svg(
            out.stream(), pattern,
            [&](double chi) { return interferometer::analytic_intensity(deg2rad(chi), u, rho); },
            "Interference pattern, " + std::string(to_string(spec.engine)) + " engine, Omega = " +
                format_number(a.omega) + " deg, alpha = " + format_number(a.alpha) + " deg");
    } else {
        write_pattern_csv(out.stream(), pattern);
    }
    std::cerr << "fit: visibility=" << format_number(fit.visibility)
              << " shift_deg=" << format_number(fit.shift_deg)
              << " offset=" << format_number(fit.offset)
              << " residual_rms=" << format_number(fit.residual_rms) << '\n';
    return 0;
}

int run_curve(const CommonArgs& a, const std::string& alphas_text, bool shift) {
    const Simulator sim(engine_options(a));
    const Engine engine = parse_engine(a.engine);
    std::vector<double> alphas = alphas_text.empty()
                                     ? (shift ? default_shift_alphas() : default_visibility_alphas(a.omega))
                                     : parse_list(alphas_text);
    const std::vector<double> grid =
        chi_grid(a, shift ? shift_fit_grid() : full_pattern_grid());
    const auto rows = shift ? shift_curve(engine, a.omega, alphas, sim, grid)
                            : visibility_curve(engine, a.omega, alphas, sim, grid);
    Output out(a.out);
    if (a.format == "svg") {
        const std::string what = shift ? "Fringe shift" : "Visibility";
        write_curve_svg(out.stream(), rows,
                        what + " vs purity, Omega = " + format_number(a.omega) + " deg (" +
                            std::string(to_string(engine)) + " engine)",
                        shift ? "shift (deg)" : "visibility");
    } else {
        write_curve_csv(out.stream(), rows);
    }
    return 0;
}

int run_validate(const CommonArgs& a, const std::string& alphas, const std::string& omegas,
                 const std::string& chis, std::size_t steps) {
    ValidationConfig cfg;
    cfg.engine = engine_options(a);
    cfg.transport_steps = steps;
    if (!alphas.empty() || !omegas.empty() || !chis.empty()) {
        if (!alphas.empty()) cfg.alphas_deg = parse_list(alphas);
        if (!omegas.empty()) cfg.omegas_deg = parse_list(omegas);
        if (!chis.empty()) cfg.chis_deg = parse_list(chis);
    }
    if (cfg.alphas_deg.empty() || cfg.omegas_deg.empty() || cfg.chis_deg.empty()) {
        std::cerr << "validate: empty grid (alpha, omega and chi lists must be non-empty)\n";
        return kExitUsage;
    }
    const ValidationReport report = validate_all(cfg);
    Output out(a.out);
    out.stream() << report.to_string();
    return report.all_passed() ? 0 : kExitFailure;
}

int run_simulate_pps(const CommonArgs& a) {
    const EngineOptions opts = engine_options(a);
    Output out(a.out);
    auto& os = out.stream();
    const DensityMatrix thermal = nmr::thermal_state(opts.system);
    os << "thermal diagonal:";
    for (int i = 0; i < 4; ++i) os << ' ' << format_number(thermal.diagonal()(i));
    os << '\n';
    try {
        const DensityMatrix pps = nmr::prepare_pps(opts.system, opts.programme);
        const nmr::PpsStructure s = nmr::analyze_pps(pps);
        os << "pps diagonal:";
        for (double p : s.diagonal) os << ' ' << format_number(p);
        os << "\nbackground: " << format_number(s.background) << "\ndelta: " << format_number(s.delta)
           << "\nbackground spread: " << format_number(s.background_spread)
           << "\nmax off-diagonal: " << format_number(s.max_off_diagonal)
           << "\nspin-qubit bloch z: "
           << format_number(density_to_bloch(nmr::deviation_spin_state(pps, s)).z()) << '\n';
        return 0;
    } catch (const nmr::PreparationError& e) {
        std::cerr << e.what() << '\n';
        os << "achieved diagonal:";
        for (double p : e.achieved_diagonal()) os << ' ' << format_number(p);
        os << '\n';
        return kExitFailure;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mixed-state geometric phase interferometry simulator"};
    app.require_subcommand(1);

    CommonArgs pattern_args, shift_args, vis_args, validate_args, pps_args;
    std::string shift_alphas, vis_alphas, val_alphas, val_omegas, val_chis;
    std::size_t transport_steps = 10000;

    auto* pattern = app.add_subcommand("pattern", "Sweep chi and emit the interference pattern");
    add_common(pattern, pattern_args);

    auto* shift = app.add_subcommand("shift", "Fitted fringe shift vs purity against theory");
    add_common(shift, shift_args);
    shift->add_option("--alphas", shift_alphas, "Comma-separated alpha values (deg)");
    shift_args.omega = 120.0;

    auto* vis = app.add_subcommand("visibility", "Fitted visibility vs purity against theory");
    add_common(vis, vis_args);
    vis->add_option("--alphas", vis_alphas, "Comma-separated alpha values (deg)");

    auto* validate = app.add_subcommand("validate", "Run the invariant suite");
    add_common(validate, validate_args);
    validate->add_option("--alphas", val_alphas, "Comma-separated alpha grid (deg)");
    validate->add_option("--omegas", val_omegas, "Comma-separated Omega grid (deg)");
    validate->add_option("--chis", val_chis, "Comma-separated chi grid (deg)");
    validate->add_option("--transport-steps", transport_steps, "Samples on the slice loop")
        ->capture_default_str();

    auto* pps = app.add_subcommand("simulate-pps", "Diagnostics of pseudo-pure state preparation");
    add_common(pps, pps_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*pattern) return run_pattern(pattern_args);
        if (*shift) return run_curve(shift_args, shift_alphas, true);
        if (*vis) return run_curve(vis_args, vis_alphas, false);
        if (*validate) {
            const bool any_empty = (validate->count("--alphas") && parse_list(val_alphas).empty()) ||
                                   (validate->count("--omegas") && parse_list(val_omegas).empty()) ||
                                   (validate->count("--chis") && parse_list(val_chis).empty());
            if (any_empty) {
                std::cerr << "validate: empty grid (alpha, omega and chi lists must be non-empty)\n";
                return kExitUsage;
            }
            return run_validate(validate_args, val_alphas, val_omegas, val_chis, transport_steps);
        }
        if (*pps) return run_simulate_pps(pps_args);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
