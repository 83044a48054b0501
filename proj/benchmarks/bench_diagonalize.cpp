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

#include "xyecho/bogoliubov.hpp"
#include "xyecho/chain.hpp"

namespace {

xyecho::ChainSpec spec_of(int n) {
  xyecho::ChainSpec spec;
  spec.n_sites = n;
  spec.lambda = 0.99;
  spec.coupling = 50.0;
  return spec.with_distance(n / 10);
}

void BM_Diagonalize(benchmark::State& state) {
  const auto form = xyecho::build_quadratic_form(spec_of(static_cast<int>(state.range(0))),
                                                 xyecho::QubitLabels{1, 1});
  for (auto _ : state) {
    auto basis = xyecho::diagonalize(form);
    benchmark::DoNotOptimize(basis.energies.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Diagonalize)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNCubed);

void BM_Connect(benchmark::State& state) {
  const auto spec = spec_of(static_cast<int>(state.range(0)));
  const auto b0 = xyecho::diagonalize(xyecho::build_quadratic_form(spec, {0, 0}));
  const auto b1 = xyecho::diagonalize(xyecho::build_quadratic_form(spec, {1, 1}));
  for (auto _ : state) {
    auto map = xyecho::connect(b0, b1);
    benchmark::DoNotOptimize(map.mat_g.data());
  }
}
BENCHMARK(BM_Connect)->Arg(50)->Arg(100)->Arg(200);

}  // namespace
