// Copyright 2026 The tfqsim Authors
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

#include <benchmark/benchmark.h>

#include <cmath>

#include "tfq/tfq.hpp"

using namespace tfq;

namespace {

void BM_CatTeleport(benchmark::State& state) {
  TeleportConfig c;
  const double h = 0.5 * static_cast<double>(state.range(0));
  c.input = {std::sqrt(0.5), std::sqrt(0.5), CatParams{-h, h, 1.0}};
  c.grid = FrequencyGrid::make(-h - 12.0, h + 12.0, 512);
  c.detectors = state.range(1) ? DetectorKind::pnr : DetectorKind::threshold;
  for (auto _ : state) benchmark::DoNotOptimize(run_teleport(c).total_success);
}
BENCHMARK(BM_CatTeleport)->Args({2, 0})->Args({10, 0})->Args({10, 1})->Unit(benchmark::kMillisecond);

void BM_GkpTeleport(benchmark::State& state) {
  TeleportConfig c;
  c.input = {0.6, cplx{0.0, 0.8}, GkpParams{1.0, 0.2, 3.0}};
  c.grid = FrequencyGrid::centered(1.0 / 32.0, 2048);
  for (auto _ : state) benchmark::DoNotOptimize(run_teleport(c).total_success);
}
BENCHMARK(BM_GkpTeleport)->Unit(benchmark::kMillisecond);

void BM_Coefficients(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(teleport_coefficients(0.2, 0.1, 3.0, 3.0, 1.0).a);
}
BENCHMARK(BM_Coefficients)->Unit(benchmark::kMillisecond);

void BM_CorrectionRound(benchmark::State& state) {
  const auto g = FrequencyGrid::centered(1.0 / 16.0, static_cast<std::size_t>(state.range(0)));
  const auto j = jsa_build({JsaShape::Form::spdc_cavity, 2.0, 6.0, GkpParams{1.0, 0.2, 4.0}}, g);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        entanglement_correct_round(j, MeasuredVariable::time, 0.0, 2.0 * 3.141592653589793, seed++).syndrome);
  }
}
BENCHMARK(BM_CorrectionRound)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
