// Copyright 2026 The xyecho Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "xyecho/echo.hpp"

namespace {

xyecho::EchoProblem problem_of(int n) {
  xyecho::ChainSpec spec;
  spec.n_sites = n;
  spec.lambda = 0.99;
  spec.coupling = 50.0;
  return xyecho::prepare_echo(spec.with_distance(2), xyecho::QubitLabels{1, 1});
}

// One determinant per call.
void BM_EchoAt(benchmark::State& state) {
  const auto problem = problem_of(static_cast<int>(state.range(0)));
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(xyecho::echo_at(problem.map, t));
    t += 1e-3;
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EchoAt)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNCubed);

void BM_EchoSeries(benchmark::State& state) {
  const auto problem = problem_of(100);
  const xyecho::TimeGrid grid{0.0, 20.0, static_cast<int>(state.range(0))};
  for (auto _ : state) {
    auto values = xyecho::evaluate_echo(problem.map, grid, 1);
    benchmark::DoNotOptimize(values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EchoSeries)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace
