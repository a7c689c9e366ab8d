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

#include "mixphase/fringe_fit.hpp"

#include "mixphase/qcore.hpp"

#include "test_random.hpp"

#include <doctest.h>

using namespace mixphase;
using namespace mixphase::harness;

namespace {

std::vector<PatternPoint> synth(double nu, double shift_deg, std::vector<double> chis) {
    std::vector<PatternPoint> pts;
    for (double c : chis) pts.push_back({c, 0.5 * (1 + nu * std::cos(deg2rad(c - shift_deg)))});
    return pts;
}

}  // namespace

TEST_SUITE("fringe_fit") {

TEST_CASE("recovers a known fringe") {
    const FringeFit f = fit_fringe(synth(0.6, -40.0, {-90, -80, -70, -60, -50, -40, -30, -20, -10, 0}));
    CHECK(f.visibility == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(f.shift_deg == doctest::Approx(-40.0).epsilon(1e-12));
    CHECK(f.offset == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f.residual_rms < 1e-14);
}

TEST_CASE("random fringes on random grids") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const double nu = testing::uniform(rng, 0.05, 1.0);
        const double shift = testing::uniform(rng, -179.0, 179.0);
        std::vector<double> chis;
        const int n = 3 + trial % 30;
        for (int i = 0; i < n; ++i) chis.push_back(testing::uniform(rng, -360, 360));
        const FringeFit f = fit_fringe(synth(nu, shift, chis));
        CHECK(std::abs(f.visibility - nu) < 1e-9);
        CHECK(std::abs(wrap_deg(f.shift_deg - shift)) < 1e-7);
    }
}

TEST_CASE("degenerate inputs") {
    CHECK_THROWS_AS((void)fit_fringe(synth(0.5, 0, {0, 10})), FitError);
    CHECK_THROWS_AS((void)fit_fringe(synth(0.5, 0, {0, 360, 720})), FitError);
    const std::vector<PatternPoint> negative{{0, -0.0}, {90, 0.0}, {180, 0.0}};
    CHECK_THROWS_AS((void)fit_fringe(negative), FitError);
}

TEST_CASE("pattern validation and windowing") {
    CHECK_THROWS_AS(InterferencePattern({{0, 1.5}}), std::invalid_argument);
    CHECK_THROWS_AS(InterferencePattern({{std::nan(""), 0.5}}), std::invalid_argument);
    const InterferencePattern p(synth(1.0, 0.0, {-180, -90, 0, 90, 180}));
    const InterferencePattern w = p.window(-90, 90);
    REQUIRE(w.size() == 3);
    CHECK(w.points().front().chi_deg == -90);
    CHECK(w.points().back().chi_deg == 90);
}

TEST_CASE("angle wrapping") {
    CHECK(wrap_deg(180.0) == 180.0);
    CHECK(wrap_deg(-180.0) == 180.0);
    CHECK(wrap_deg(190.0) == doctest::Approx(-170.0));
    CHECK(wrap_deg(-370.0) == doctest::Approx(-10.0));
    CHECK(unwrap_near(170.0, -175.0) == doctest::Approx(-190.0));
    CHECK(unwrap_near(-10.0, 350.0) == doctest::Approx(350.0));
}

}  // TEST_SUITE
