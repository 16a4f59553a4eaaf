// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "actris/channel.hpp"
#include "actris/model_io.hpp"
#include "actris/saa.hpp"

using namespace actris;

namespace {
std::vector<saa::SaaCoefficients> saa_set(int n, int s) {
  const ScenarioConfig cfg = ScenarioConfig::defaults(n, 2);
  const auto samples = channel::draw_samples(cfg, 4, s, 1, false);
  std::vector<saa::SaaCoefficients> out;
  out.reserve(samples.size());
  for (const auto& smp : samples) out.push_back(saa::per_sample_coefficients(smp, cfg));
  return out;
}
}  // namespace

static void BM_BuildModelDense(benchmark::State& state) {
  const auto coeffs = saa_set(static_cast<int>(state.range(0)), 100);
  saa::BuildOptions opts;
  opts.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(saa::build_feasibility_model(coeffs, 1.0, 0.1, 2.0, opts));
  }
}
BENCHMARK(BM_BuildModelDense)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_ExportIr(benchmark::State& state) {
  const auto coeffs = saa_set(16, 100);
  const auto model = saa::build_feasibility_model(coeffs, 1.0, 0.1, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(saa::export_model_ir(model));
  }
}
BENCHMARK(BM_ExportIr)->Unit(benchmark::kMillisecond);

static void BM_BigM(benchmark::State& state) {
  const auto coeffs = saa_set(static_cast<int>(state.range(0)), 200);
  for (auto _ : state) {
    benchmark::DoNotOptimize(saa::compute_big_m(coeffs, 1.0, 0.02, 2.0));
  }
}
BENCHMARK(BM_BigM)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
