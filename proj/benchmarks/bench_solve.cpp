// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "actris/channel.hpp"
#include "actris/solve.hpp"

using namespace actris;

namespace {
std::vector<sinr::SinrCoefficients> coeff_set(int n, int m, int s) {
  const ScenarioConfig cfg = ScenarioConfig::defaults(n, m);
  const auto samples = channel::draw_samples(cfg, 3, s, 1, false);
  std::vector<sinr::SinrCoefficients> out;
  out.reserve(samples.size());
  for (const auto& smp : samples) out.push_back(channel::make_sinr_coefficients(smp, cfg));
  return out;
}
}  // namespace

static void BM_ExactOracle(benchmark::State& state) {
  const auto coeffs = coeff_set(static_cast<int>(state.range(0)), 2, 100);
  solve::ExactOptions opts;
  opts.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve::check_feasible_exact(coeffs, 1.0, 10, 2.0, opts));
  }
}
BENCHMARK(BM_ExactOracle)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_MaxTauAtGain(benchmark::State& state) {
  const auto coeffs = coeff_set(static_cast<int>(state.range(0)), 2, 200);
  solve::ExactOptions opts;
  opts.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve::max_tau_at_gain(coeffs, 1.0, 20, opts));
  }
}
BENCHMARK(BM_MaxTauAtGain)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

static void BM_LocalSearch(benchmark::State& state) {
  const auto coeffs = coeff_set(64, 2, 100);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve::check_feasible_local(coeffs, 1.0, 10, 2.0, {4, 1}));
  }
}
BENCHMARK(BM_LocalSearch)->Unit(benchmark::kMillisecond);
