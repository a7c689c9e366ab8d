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

#include "mixphase/pulse_format.hpp"

#include <doctest.h>

#include <filesystem>

using namespace mixphase;
using namespace mixphase::nmr;

namespace {

void check_same(const PulseProgramme& a, const PulseProgramme& b, double tol) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const PulseEvent& x = a.events()[i];
        const PulseEvent& y = b.events()[i];
        INFO("event " << i);
        CHECK(x.kind == y.kind);
        CHECK(x.target == y.target);
        CHECK(std::abs(x.flip_angle - y.flip_angle) <= tol);
        CHECK(std::abs(std::remainder(x.phase - y.phase, 2 * kPi)) <= tol);
        CHECK(std::abs(x.duration - y.duration) <= tol);
    }
}

}  // namespace

TEST_SUITE("pulse_format") {

TEST_CASE("basic statements") {
    const SpinSystem sys;
    const PulseProgramme p = parse_programme(
        "# comment\n"
        "pulse H 90 y   # trailing comment\n"
        "\n"
        "pulse HC 180 -x\n"
        "tpulse 180 45\n"
        "delay 0.25/J\n"
        "gradient\n",
        sys);
    REQUIRE(p.size() == 5);
    CHECK(p.events()[0] == PulseEvent::rf(Target::H, deg2rad(90.0), kPhaseY));
    CHECK(p.events()[1].target == Target::Both);
    CHECK(p.events()[1].phase == doctest::Approx(kPhaseXBar));
    CHECK(p.events()[2].kind == EventKind::TransitionPulse);
    CHECK(p.events()[2].phase == doctest::Approx(kPi / 4));
    CHECK(p.events()[3].duration == doctest::Approx(1.0 / (4.0 * 209.0)).epsilon(1e-15));
    CHECK(p.events()[4].kind == EventKind::Gradient);
}

TEST_CASE("expressions and parameters") {
    const SpinSystem sys;
    const PulseProgramme p = parse_programme("pulse C $a+180-30 x\ndelay 1e-3+0.5/J\ntpulse 180 $t+180+$p\n",
                                             sys, {{"a", 10.0}, {"t", 5.0}, {"p", 60.0}});
    CHECK(p.events()[0].flip_angle == doctest::Approx(deg2rad(160.0)).epsilon(1e-14));
    CHECK(p.events()[1].duration == doctest::Approx(1e-3 + 0.5 / 209.0).epsilon(1e-14));
    CHECK(p.events()[2].phase == doctest::Approx(deg2rad(245.0)).epsilon(1e-14));
}

TEST_CASE("errors carry the line number") {
    const SpinSystem sys;
    auto line_of = [&](std::string_view text) -> std::size_t {
        try {
            (void)parse_programme(text, sys);
        } catch (const PulseFormatError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("gradient\npulse Q 90 x\n") == 2);
    CHECK(line_of("pulse H 90\n") == 1);
    CHECK(line_of("gradient\n\ndelay $missing\n") == 3);
    CHECK(line_of("frobnicate\n") == 1);
    CHECK(line_of("pulse H 9o x\n") == 1);
    CHECK(line_of("gradient extra\n") == 1);
    CHECK_THROWS_AS((void)parse_programme("# nothing\n", sys), std::exception);
}

TEST_CASE("format and parse round trip") {
    const SpinSystem sys;
    InterferometerSettings s;
    s.chi = 1.234567;
    s.phi_slice = 0.7;
    s.theta = 0.3;
    s.alpha = 0.9;
    const PulseProgramme prog = pps_programme(sys).then(mixed_state_programme(*s.alpha)).then(interferometer_programme(s));
    const PulseProgramme back = parse_programme(format_programme(prog), sys);
    check_same(prog, back, 1e-14);
}

TEST_CASE("shipped programme matches the built-in sequence") {
    const SpinSystem sys;
    const double alpha = 35.0, chi = -70.0, theta = 20.0, phi = 55.0, tau = 0.004;
    const PulseProgramme file =
        load_programme(std::filesystem::path(MIXPHASE_DATA_DIR) / "interferometer.pp", sys,
                       {{"alpha", alpha}, {"chi", chi}, {"theta", theta}, {"phi", phi}, {"tau", tau}});
    InterferometerSettings s;
    s.chi = deg2rad(chi);
    s.phi_slice = deg2rad(phi);
    s.theta = deg2rad(theta);
    s.tau = tau;
    const PulseProgramme built =
        pps_programme(sys).then(mixed_state_programme(deg2rad(alpha))).then(interferometer_programme(s));
    check_same(file, built, 1e-13);
}

TEST_CASE("missing file") {
    CHECK_THROWS((void)load_programme("/nonexistent/file.pp", SpinSystem{}));
}

}  // TEST_SUITE
