// Copyright 2026 The blowup-verify Authors
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

// Serial references against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "blowup/cone.h"
#include "blowup/config.h"
#include "blowup/lattice.h"
#include "blowup/reference.h"
#include "blowup/rigidity.h"

namespace {

namespace fg = blowup::fieldgeom;

const fg::Config& BenchConfig() {
  static const fg::Config config = fg::GenerateConfig(3, 3, {1, 2, 3}, 31, 1);
  return config;
}

void BM_StabilizerSerial(benchmark::State& state) {
  const auto pts = fg::AxisCoordinates(BenchConfig(), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        blowup::reference::StabilizerPgl2Serial(BenchConfig().field(), pts));
  }
}
BENCHMARK(BM_StabilizerSerial)->Unit(benchmark::kMillisecond);

void BM_StabilizerOpenMP(benchmark::State& state) {
  const auto pts = fg::AxisCoordinates(BenchConfig(), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fg::EnumerateStabilizerPgl2(BenchConfig().field(), pts));
  }
}
BENCHMARK(BM_StabilizerOpenMP)->Unit(benchmark::kMillisecond);

void BM_ExtremalitySerial(benchmark::State& state) {
  const blowup::lattice::Lattice lat(BenchConfig());
  const blowup::cone::GeneratorSet gens(lat);
  const blowup::cone::SemigroupSearch search(gens);
  for (auto _ : state) {
    benchmark::DoNotOptimize(blowup::reference::ExtremalityTableSerial(search));
  }
}
BENCHMARK(BM_ExtremalitySerial)->Unit(benchmark::kMillisecond);

void BM_ExtremalityOpenMP(benchmark::State& state) {
  const blowup::lattice::Lattice lat(BenchConfig());
  const blowup::cone::GeneratorSet gens(lat);
  const blowup::cone::SemigroupSearch search(gens);
  for (auto _ : state) {
    benchmark::DoNotOptimize(blowup::cone::ExtremalityTable(search));
  }
}
BENCHMARK(BM_ExtremalityOpenMP)->Unit(benchmark::kMillisecond);

void BM_GraphSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(blowup::reference::BuildGraphSerial(BenchConfig()));
  }
}
BENCHMARK(BM_GraphSerial)->Unit(benchmark::kMillisecond);

void BM_GraphOpenMP(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(blowup::rigidity::BuildGraph(BenchConfig()));
  }
}
BENCHMARK(BM_GraphOpenMP)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
