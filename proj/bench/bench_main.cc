//
// Copyright 2026 The dppm Authors
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
//


// Serial vs OpenMP timings for the hot kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "dppm/audit.h"
#include "dppm/budget.h"
#include "dppm/matchers.h"
#include "dppm/noise.h"
#include "dppm/pattern_analysis.h"
#include "dppm/text.h"

namespace {

using namespace dppm;

std::string random_string(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::string s(n, 'a');
  for (auto& c : s) c = static_cast<char>('a' + rng() % 4);
  return s;
}

Execution exec_of(const benchmark::State& state) {
  return state.range(1) ? Execution::kParallel : Execution::kSerial;
}

void BM_SlidingReference(benchmark::State& state) {
  const Text s(random_string(static_cast<std::size_t>(state.range(0)), 1));
  const Text p(random_string(64, 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sliding_distances_reference(s, p));
  }
}
BENCHMARK(BM_SlidingReference)->Arg(1 << 16)->Arg(1 << 18);

void BM_Sliding(benchmark::State& state) {
  const Text s(random_string(static_cast<std::size_t>(state.range(0)), 1));
  const Text p(random_string(64, 2));
  const auto ex = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(sliding_distances(s, p, ex));
}
BENCHMARK(BM_Sliding)->ArgsProduct({{1 << 16, 1 << 18}, {0, 1}});

void BM_ReportPeriodic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::string s;
  while (s.size() < n) s += "ab";
  const std::string p(s.substr(0, 256));
  const MatchQuery q{Pattern(p), 2, 2.0, 0.1};
  const PeriodicCandidate cand{2, Text("ab"), 0};
  MatcherOptions opt;
  opt.execution = exec_of(state);
  opt.check_hypothesis = false;
  for (auto _ : state) {
    NoiseSource noise = NoiseSource::standard(7);
    BudgetLedger ledger(n, 2.0);
    benchmark::DoNotOptimize(
        report_periodic(Text(s), q, cand, noise, ledger, opt));
  }
}
BENCHMARK(BM_ReportPeriodic)->ArgsProduct({{1 << 14, 1 << 16}, {0, 1}});

void BM_CountNonPeriodic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Text s(random_string(n, 3));
  const MatchQuery q{Pattern(random_string(64, 4)), 2, 2.0, 0.1};
  MatcherOptions opt;
  opt.execution = exec_of(state);
  opt.check_hypothesis = false;
  for (auto _ : state) {
    NoiseSource noise = NoiseSource::standard(7);
    BudgetLedger ledger(n, 2.0);
    benchmark::DoNotOptimize(count_nonperiodic(s, q, noise, ledger, opt));
  }
}
BENCHMARK(BM_CountNonPeriodic)->ArgsProduct({{1 << 14, 1 << 16}, {0, 1}});

void BM_UtilityExperiment(benchmark::State& state) {
  TrialConfig cfg;
  cfg.n = 5000;
  cfg.m = 64;
  cfg.k = 3;
  cfg.epsilon = 1.0;
  cfg.beta = 0.1;
  cfg.trials = static_cast<std::size_t>(state.range(0));
  cfg.seed = 11;
  cfg.generator = GeneratorKind::kPlanted;
  const auto ex = exec_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_utility_experiment(cfg, MatchVariant::kExistence, ex));
  }
}
BENCHMARK(BM_UtilityExperiment)->ArgsProduct({{50}, {0, 1}});

}  // namespace

BENCHMARK_MAIN();
