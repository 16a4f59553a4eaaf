// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "actris/bounds.hpp"
#include "actris/channel.hpp"
#include "actris/rng.hpp"
#include "actris/sinr.hpp"

using namespace actris;

namespace {
sinr::SinrCoefficients coeffs_of(int n, int m) {
  const ScenarioConfig cfg = ScenarioConfig::defaults(n, m);
  return channel::make_sinr_coefficients(channel::sample_scenario(cfg, 1, 0, false), cfg);
}
}  // namespace

static void BM_EvaluateSinr(benchmark::State& state) {
  const auto cs = coeffs_of(static_cast<int>(state.range(0)), 4);
  Philox rng(5, 0, 0);
  Eigen::VectorXd b(cs.n());
  for (int i = 0; i < cs.n(); ++i) b[i] = rng.next_below(2) ? 1.0 : -1.0;
  double g = 0.0;
  for (auto _ : state) {
    g += 1e-6;
    benchmark::DoNotOptimize(sinr::evaluate_sinr(cs, b, g));
  }
}
BENCHMARK(BM_EvaluateSinr)->Arg(16)->Arg(128);

static void BM_EnvelopeTerms(benchmark::State& state) {
  const auto cs = coeffs_of(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bounds::envelope_terms(cs));
  }
}
BENCHMARK(BM_EnvelopeTerms)->Arg(16)->Arg(128);
