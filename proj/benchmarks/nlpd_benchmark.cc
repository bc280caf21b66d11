// Copyright 2026 The NLPD Authors. All Rights Reserved.
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

#include "nlpd/gradient.h"
#include "nlpd/nlp.h"
#include "nlpd/optimize.h"
#include "nlpd/pyramid.h"

namespace nlpd {
namespace {

void BM_BuildPyramid(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const Plane plane = SplitChannels(UniformNoiseImage(size, size, 1, 1))[0];
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildPyramid(plane, Kernel2D::Binomial5(), 6));
  }
  state.SetItemsProcessed(state.iterations() * size * size);
}
BENCHMARK(BM_BuildPyramid)->Arg(64)->Arg(256)->Arg(512);

void BM_Nlpd(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const int channels = static_cast<int>(state.range(1));
  const Image a = UniformNoiseImage(size, size, channels, 1);
  const Image b = UniformNoiseImage(size, size, channels, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Nlpd(a, b, DefaultParams()).total);
  state.SetItemsProcessed(state.iterations() * size * size * channels);
}
BENCHMARK(BM_Nlpd)->Args({64, 1})->Args({256, 1})->Args({256, 3});

void BM_NlpdGradient(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const Image a = UniformNoiseImage(size, size, 1, 1);
  const Image b = UniformNoiseImage(size, size, 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(NlpdGradient(a, b, DefaultParams()).value);
  state.SetItemsProcessed(state.iterations() * size * size);
}
BENCHMARK(BM_NlpdGradient)->Arg(64)->Arg(256);

}  // namespace
}  // namespace nlpd

BENCHMARK_MAIN();
