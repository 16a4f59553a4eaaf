// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "actris/gaincap.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace actris;
using namespace actris::testing;

TEST_CASE("g_stab") {
  CHECK(gaincap::g_stab(0.5, 4.0) == 2.0);
  CHECK(gaincap::g_stab(0.9, 1.0) == doctest::Approx(0.9));
  CHECK_THROWS_AS(gaincap::g_stab(1.2, 4.0), std::domain_error);
  CHECK_THROWS_AS(gaincap::g_stab(0.5, 0.0), std::domain_error);
}

TEST_CASE("psi_max_per_sample") {
  const ScenarioConfig cfg = ScenarioConfig::defaults(1, 0);
  const auto one = channel::draw_samples(cfg, 3, 4, 1);
  const auto psi = gaincap::psi_max_per_sample(one);
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(psi[i] == one[i].psi[0]);

  ScenarioConfig dark = ScenarioConfig::defaults(4, 0);
  dark.p_d = 1e-300;  // desired_power must stay positive; make it negligible
  const auto dim = channel::draw_samples(dark, 3, 3, 1);
  for (double v : gaincap::psi_max_per_sample(dim)) CHECK(v < 1e-290);

  const auto many = channel::draw_samples(ScenarioConfig::defaults(5, 2), 9, 6, 1);
  const auto got = gaincap::psi_max_per_sample(many);
  for (std::size_t i = 0; i < many.size(); ++i) {
    double best = 0.0;
    for (int k = 0; k < many[i].psi.size(); ++k) best = std::max(best, many[i].psi[k]);
    CHECK(got[i] == best);
  }

  CHECK_THROWS_AS(gaincap::psi_max_per_sample({}), std::invalid_argument);
}

TEST_CASE("worst-case EIRP bound") {
  CHECK(gaincap::g_eirp_worst_case({1.0, 4.0}, 1.0, 1.0) == doctest::Approx(0.5));
  CHECK(gaincap::g_eirp_worst_case({1.0, 4.0}, 4.0, 0.5) == doctest::Approx(2.0));
  const double base = gaincap::g_eirp_worst_case({0.7, 2.5, 1.1}, 3.0, 0.9);
  const double scaled = gaincap::g_eirp_worst_case({2.8, 10.0, 4.4}, 3.0, 0.9);
  CHECK(scaled == doctest::Approx(base / 2.0).epsilon(1e-12));
  CHECK(std::isinf(gaincap::g_eirp_worst_case({0.0, 0.0}, 1.0, 1.0)));
}

TEST_CASE("quantile EIRP bound and its order-statistic convention") {
  CHECK(gaincap::g_eirp_quantile({1, 2, 3, 4}, 0.25, 1.0, 1.0) == doctest::Approx(1.0 / std::sqrt(3.0)));
  // alpha -> 0 recovers the worst case on the same set
  CHECK(gaincap::g_eirp_quantile({1, 2, 3, 4}, 1e-9, 1.0, 1.0) ==
        doctest::Approx(gaincap::g_eirp_worst_case({1, 2, 3, 4}, 1.0, 1.0)));
  for (double alpha : {0.05, 0.3, 0.7}) {
    CHECK(gaincap::g_eirp_quantile({2.0, 2.0, 2.0}, alpha, 9.0, 1.0) ==
          doctest::Approx(3.0 / std::sqrt(2.0)));
  }
}

TEST_CASE("Cantelli EIRP bound") {
  const double sd = 0.25;
  const double mu = 0.75;
  const double half = sd / std::sqrt(2.0);
  const std::vector<double> two = {mu - half, mu + half};  // mean .75, S-1 stdev .25
  CHECK(gaincap::g_eirp_cantelli(two, 0.5, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  // c_alpha = 2 at alpha = 0.2
  CHECK(gaincap::g_eirp_cantelli(two, 0.2, 1.0, 1.0) ==
        doctest::Approx(1.0 / std::sqrt(mu + 2.0 * sd)).epsilon(1e-12));
  CHECK_THROWS_AS(gaincap::g_eirp_cantelli({1.0}, 0.5, 1.0, 1.0), std::invalid_argument);

  // empirical exceedance never beats the Cantelli level
  Philox rng(51, 0, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const double alpha = 0.05 + 0.4 * rng.next_closed_open();
    std::vector<double> psi(40);
    for (auto& v : psi) {
      const double x = rng.next_normal();
      v = x * x + 0.1 * rng.next_closed_open();
    }
    const double mean = std::accumulate(psi.begin(), psi.end(), 0.0) / psi.size();
    double var = 0.0;
    for (double v : psi) var += (v - mean) * (v - mean);
    var /= (psi.size() - 1);
    const double level = mean + std::sqrt((1.0 - alpha) / alpha) * std::sqrt(var);
    const auto above = std::count_if(psi.begin(), psi.end(), [&](double v) { return v > level; });
    CHECK(static_cast<double>(above) / psi.size() <= alpha + 1e-12);
  }
}

TEST_CASE("g_max combination") {
  CHECK(gaincap::g_max(2.0, 1.0) == 1.0);
  CHECK(gaincap::g_max(1.0, std::numeric_limits<double>::infinity()) == 1.0);
  CHECK(gaincap::g_max(0.0, 5.0) == 0.0);
}

TEST_CASE("bound ordering and scaling properties") {
  Philox rng(52, 0, 0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> psi(25);
    for (auto& v : psi) v = 0.05 + 3.0 * rng.next_closed_open();
    const double wc = gaincap::g_eirp_worst_case(psi, 2.0, 0.9);
    for (double alpha : {0.05, 0.1, 0.25}) {
      CHECK(wc <= gaincap::g_eirp_quantile(psi, alpha, 2.0, 0.9) * (1 + 1e-12));
    }
    // quantile bound nondecreasing in alpha
    CHECK(gaincap::g_eirp_quantile(psi, 0.05, 2.0, 0.9) <=
          gaincap::g_eirp_quantile(psi, 0.25, 2.0, 0.9) * (1 + 1e-12));

    // 1/sqrt(psi scale) and 1/rho scaling laws
    std::vector<double> psi4 = psi;
    for (auto& v : psi4) v *= 4.0;
    CHECK(gaincap::g_eirp_worst_case(psi4, 2.0, 0.9) ==
          doctest::Approx(wc / 2.0).epsilon(1e-12));
    CHECK(gaincap::g_eirp_quantile(psi4, 0.1, 2.0, 0.9) ==
          doctest::Approx(gaincap::g_eirp_quantile(psi, 0.1, 2.0, 0.9) / 2.0).epsilon(1e-12));
    CHECK(gaincap::g_eirp_cantelli(psi4, 0.1, 2.0, 0.9) ==
          doctest::Approx(gaincap::g_eirp_cantelli(psi, 0.1, 2.0, 0.9) / 2.0).epsilon(1e-12));
    CHECK(gaincap::g_eirp_worst_case(psi, 2.0, 0.45) == doctest::Approx(2.0 * wc).epsilon(1e-12));
  }
}

TEST_CASE("compute_gain_cap applies the configured rule") {
  ScenarioConfig cfg = ScenarioConfig::defaults(6, 1);
  const auto samples = channel::draw_samples(cfg, 1234, 40, 1);
  const auto cap = gaincap::compute_gain_cap(cfg, samples);
  CHECK(cap.g_stab == doctest::Approx(cfg.gain_cap.mu_safety * cfg.gain_cap.mag));
  CHECK(cap.g_max == std::min(cap.g_stab, cap.g_eirp));
  CHECK(cap.g_max <= cap.g_stab);
  CHECK(cap.g_max <= cap.g_eirp);

  cfg.gain_cap.rule = GainCapConfig::EirpRule::kQuantile;
  const auto capq = gaincap::compute_gain_cap(cfg, samples);
  CHECK(cap.g_eirp <= capq.g_eirp * (1 + 1e-12));
}
