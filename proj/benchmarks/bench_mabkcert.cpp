// Copyright 2026 The mabkcert Authors
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


#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "mabkcert/blochopt.hpp"
#include "mabkcert/correlators.hpp"
#include "mabkcert/mabk.hpp"
#include "mabkcert/npa.hpp"

namespace {

using namespace mabkcert;

std::vector<BlochVector> random_blochs(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<BlochVector> out;
  while (out.size() < n) {
    const double x = normal(rng), y = normal(rng), z = normal(rng);
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r > 1e-3) out.emplace_back(x / r, y / r, z / r);
  }
  return out;
}

void BM_GhzExpectation(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  const GhzCorrelator corr(n);
  const auto obs = random_blochs(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(corr.expectation(obs));
}
BENCHMARK(BM_GhzExpectation)->DenseRange(3, 10);

void BM_GhzExpectationFullSum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  const auto obs = random_blochs(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ghz_expectation_full_sum(n, obs));
}
BENCHMARK(BM_GhzExpectationFullSum)->DenseRange(3, 8);

void BM_MabkExpression(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mabk_expression(n));
}
BENCHMARK(BM_MabkExpression)->DenseRange(3, 10);

void BM_BellValue(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  const auto b = random_blochs(2 * n, rng);
  std::vector<ObservablePair> bobs;
  for (std::size_t k = 1; k < n; ++k) bobs.push_back({b[2 * k], b[2 * k + 1]});
  const MeasurementSettings settings({b[0], b[1]}, bobs, false);
  const BellExpression expr = mabk_expression(n);
  const GhzCorrelator corr(n);
  for (auto _ : state) benchmark::DoNotOptimize(corr.bell_value(expr, settings));
}
BENCHMARK(BM_BellValue)->DenseRange(3, 8);

void BM_OptimizeSingleRestart(benchmark::State& state) {
  OptimizerConfig cfg;
  cfg.restarts = 1;
  cfg.threads = 1;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(maximize_unconstrained_mabk(n, cfg).best_value);
}
BENCHMARK(BM_OptimizeSingleRestart)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_NpaSolve(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const bool constrained = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(npa_upper_bound(level, constrained).bound);
}
BENCHMARK(BM_NpaSolve)->ArgsProduct({{2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
