// Copyright 2026  lrcal authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include <omp.h>

#include <vector>

#include "lrcal/calibration.hpp"
#include "lrcal/rng.hpp"
#include "lrcal/sweep.hpp"

namespace {

lrcal::LlrTransform demo_transform() {
  lrcal::Rng rng(7);
  std::vector<double> sp(12), sd(400);
  for (auto& x : sp) x = 4 + rng.normal();
  for (auto& x : sd) x = -4 + rng.normal();
  return lrcal::fit_transform(lrcal::ScoreSet::from_values(sp, sd), lrcal::Method::BAYES);
}

std::vector<double> score_grid(std::size_t n) {
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = -20.0 + 40.0 * static_cast<double>(i) / static_cast<double>(n);
  return s;
}

lrcal::SweepConfig bench_sweep() {
  lrcal::SweepConfig c;
  c.n_replicates = 8;
  c.np_grid = {2, 5, 10};
  return c;
}

void BM_LlrBatchSerial(benchmark::State& state) {
  const auto t = demo_transform();
  const auto s = score_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lrcal::llr_batch_serial(t, s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_LlrBatchOpenMP(benchmark::State& state) {
  const auto t = demo_transform();
  const auto s = score_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lrcal::llr_batch(t, s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_SweepSerial(benchmark::State& state) {
  const auto cfg = bench_sweep();
  for (auto _ : state) benchmark::DoNotOptimize(lrcal::run_sweep_serial(cfg));
}

void BM_SweepOpenMP(benchmark::State& state) {
  const auto cfg = bench_sweep();
  for (auto _ : state) benchmark::DoNotOptimize(lrcal::run_sweep(cfg));
  state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_LlrBatchSerial)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_LlrBatchOpenMP)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepOpenMP)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
