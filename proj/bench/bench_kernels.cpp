#include <benchmark/benchmark.h>

#include "mms/bounds.hpp"
#include "mms/random.hpp"
#include "mms/reproduce.hpp"
#include "mms/witness.hpp"

using namespace mms;

namespace {

Configuration sample_config(int n) {
  Rng rng(1);
  return random_configuration(rng, n);
}

void BM_CountSerial(benchmark::State& state) {
  const auto config = sample_config(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_nonneg_ksums_serial(config, 4, {.collect_family = false}).count);
  }
}

void BM_CountParallel(benchmark::State& state) {
  const auto config = sample_config(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_nonneg_ksums(config, 4, {.collect_family = false}).count);
  }
}

std::vector<KSubset> sample_sets(int n, int count) {
  Rng rng(2);
  std::vector<KSubset> sets;
  for (int i = 0; i < count; ++i) sets.emplace_back(sample_combination(rng, 1, n, 5));
  return sets;
}

void BM_ViolationsSerial(benchmark::State& state) {
  const auto config = sample_config(200);
  const auto sets = sample_sets(200, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_violations_serial(config, sets));
}

void BM_ViolationsParallel(benchmark::State& state) {
  const auto config = sample_config(200);
  const auto sets = sample_sets(200, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_violations(config, sets));
}

void BM_StageSweepSerial(benchmark::State& state) {
  const BigInt n(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(thm2_stage_failures_serial(n, 3));
}

void BM_StageSweepParallel(benchmark::State& state) {
  const BigInt n(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(thm2_stage_failures(n, 3));
}

}  // namespace

BENCHMARK(BM_CountSerial)->Arg(30)->Arg(50);
BENCHMARK(BM_CountParallel)->Arg(30)->Arg(50);
BENCHMARK(BM_ViolationsSerial)->Arg(10000)->Arg(100000);
BENCHMARK(BM_ViolationsParallel)->Arg(10000)->Arg(100000);
BENCHMARK(BM_StageSweepSerial)->Arg(5200)->Arg(20000);
BENCHMARK(BM_StageSweepParallel)->Arg(5200)->Arg(20000);

BENCHMARK_MAIN();
