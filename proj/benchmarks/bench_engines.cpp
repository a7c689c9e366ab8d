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
#include "mixphase/mixed_phase.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace mixphase;
using namespace mixphase::harness;

namespace {

const Simulator& sim() {
    static const Simulator s;
    return s;
}

void BM_Intensity(benchmark::State& state) {
    const auto engine = static_cast<Engine>(state.range(0));
    double chi = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sim().intensity(engine, 120.0, 45.0, chi));
        chi += 1.0;
    }
    state.SetLabel(std::string(to_string(engine)));
}
BENCHMARK(BM_Intensity)->Arg(static_cast<int>(Engine::Analytic))->Arg(static_cast<int>(Engine::Gate))
    ->Arg(static_cast<int>(Engine::Pulse));

void BM_PatternSweep(benchmark::State& state) {
    const SweepSpec spec{static_cast<Engine>(state.range(0)), 180.0, 30.0, full_pattern_grid(), std::nullopt};
    for (auto _ : state) benchmark::DoNotOptimize(sweep(spec, sim()));
    state.SetLabel(std::string(to_string(spec.engine)));
}
BENCHMARK(BM_PatternSweep)->Arg(static_cast<int>(Engine::Gate))->Arg(static_cast<int>(Engine::Pulse));

void BM_FitFringe(benchmark::State& state) {
    std::vector<PatternPoint> pts;
    for (double c : linspace(-360.0, 360.0, static_cast<std::size_t>(state.range(0))))
        pts.push_back({c, 0.5 * (1 + 0.7 * std::cos(deg2rad(c + 40.0)))});
    for (auto _ : state) benchmark::DoNotOptimize(fit_fringe(pts));
}
BENCHMARK(BM_FitFringe)->Arg(10)->Arg(37)->Arg(361);

void BM_PreparePps(benchmark::State& state) {
    const nmr::SpinSystem sys;
    for (auto _ : state) benchmark::DoNotOptimize(nmr::prepare_pps(sys));
}
BENCHMARK(BM_PreparePps);

void BM_TransportCheck(benchmark::State& state) {
    const DensityMatrix rho = spin_input(60.0);
    const auto path = mixedphase::slice_circuit_path(deg2rad(60.0), static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(mixedphase::parallel_transport_violation(rho, path));
}
BENCHMARK(BM_TransportCheck)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
