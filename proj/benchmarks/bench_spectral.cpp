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

#include "tfq/tfq.hpp"

using namespace tfq;

namespace {

void BM_TimeDomainRoundTrip(benchmark::State& state) {
  const auto g = FrequencyGrid::make(-20.0, 20.0, static_cast<std::size_t>(state.range(0)));
  const auto a = gaussian_amplitude({0.0, 1.0}, g);
  for (auto _ : state) {
    auto b = from_time_domain(to_time_domain(a));
    benchmark::DoNotOptimize(b.samples.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TimeDomainRoundTrip)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

void BM_GkpLogical(benchmark::State& state) {
  const auto g = FrequencyGrid::centered(1.0 / 64.0, static_cast<std::size_t>(state.range(0)));
  const GkpParams p{1.0, 0.1, 6.0};
  for (auto _ : state) benchmark::DoNotOptimize(gkp_logical(p, 0, g).samples.data());
}
BENCHMARK(BM_GkpLogical)->Arg(4096)->Arg(16384);

void BM_DelayInterferometer(benchmark::State& state) {
  const auto g = FrequencyGrid::centered(1.0 / 64.0, static_cast<std::size_t>(state.range(0)));
  const GkpParams p{1.0, 0.1, 6.0};
  const auto in = PhotonicState::single("a", make_qubit({1.0, 0.0, p}, g));
  for (auto _ : state) benchmark::DoNotOptimize(gkp_fqbs(in, "a", "b", 3.141592653589793));
}
BENCHMARK(BM_DelayInterferometer)->Arg(4096)->Arg(16384);

void BM_FrequencyBeamSplitter(benchmark::State& state) {
  const auto g = FrequencyGrid::make(-16.0, 16.0, static_cast<std::size_t>(state.range(0)));
  const auto u = gaussian_amplitude({0.5, 1.0}, g);
  const auto j = JointAmplitude::product(u, gaussian_amplitude({-0.5, 1.5}, g));
  const auto method = state.range(1) ? Interpolation::bilinear : Interpolation::fourier;
  for (auto _ : state) benchmark::DoNotOptimize(frequency_beam_splitter(j, method));
}
BENCHMARK(BM_FrequencyBeamSplitter)->Args({128, 0})->Args({256, 0})->Args({256, 1})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
