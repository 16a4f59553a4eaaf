// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "actris/channel.hpp"

using namespace actris;

static void BM_SampleScenario(benchmark::State& state) {
  const ScenarioConfig cfg = ScenarioConfig::defaults(static_cast<int>(state.range(0)), 4);
  std::uint32_t index = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(channel::sample_scenario(cfg, 1, index++, /*keep_raw=*/false));
  }
}
BENCHMARK(BM_SampleScenario)->Arg(16)->Arg(64)->Arg(128);

static void BM_DrawSampleSet(benchmark::State& state) {
  const ScenarioConfig cfg = ScenarioConfig::defaults(64, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(channel::draw_samples(cfg, 1, 200, static_cast<int>(state.range(0)), false));
  }
}
BENCHMARK(BM_DrawSampleSet)->Arg(1)->Arg(2);
