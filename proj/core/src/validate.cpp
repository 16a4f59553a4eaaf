// SPDX-License-Identifier: Apache-2.0
#include "actris/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "actris/bounds.hpp"
#include "actris/common.hpp"

namespace actris::validate {

namespace {

// Straight-loop SINR recomputation, independent of sinr::evaluate_sinr.
double direct_sinr(const sinr::SinrCoefficients& cs, const Eigen::VectorXd& b, double g) {
  double br = 0.0, bc = 0.0;
  for (int i = 0; i < cs.n(); ++i) {
    br += b[i] * cs.r[i];
    bc += b[i] * cs.c[i];
  }
  const double num =
      cs.p_d * (cs.a + g * 2.0 * cs.rho * cs.abs_d * br + g * g * cs.rho * cs.rho * (br * br + bc * bc));
  double den = cs.d0 + g * g * cs.d1;
  for (int m = 0; m < cs.m(); ++m) {
    const auto mu = static_cast<std::size_t>(m);
    double brm = 0.0, bcm = 0.0;
    for (int i = 0; i < cs.n(); ++i) {
      brm += b[i] * cs.r_m[mu][i];
      bcm += b[i] * cs.c_m[mu][i];
    }
    den += cs.p_m[mu] * (cs.a_m[mu] + g * 2.0 * cs.rho * cs.abs_dm[mu] * brm +
                         g * g * cs.rho * cs.rho * (brm * brm + bcm * bcm));
  }
  return num / den;
}

std::vector<double> design_sinrs(const solve::Design& design,
                                 const std::vector<sinr::SinrCoefficients>& samples) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& cs : samples) out.push_back(direct_sinr(cs, design.b, design.g));
  return out;
}

}  // namespace

int lower_tail_quantile_index(double epsilon, int s) {
  const int idx = static_cast<int>(std::ceil(epsilon * static_cast<double>(s)));
  return std::clamp(idx, 1, s);
}

Ci wilson_interval(int successes, int trials) {
  if (trials <= 0) throw std::invalid_argument("wilson_interval: trials must be positive");
  constexpr double z = 1.959963984540054;  // 97.5% normal quantile
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // The score interval contains the point estimate; clamp away the last-ulp
  // residue so the containment holds exactly.
  const double lo = std::min(std::max(0.0, center - half), p);
  const double hi = std::max(std::min(1.0, center + half), p);
  return {lo, hi};
}

std::pair<double, Ci> empirical_reliability(const solve::Design& design,
                                            const std::vector<sinr::SinrCoefficients>& test_set,
                                            double tau) {
  if (test_set.empty()) throw std::invalid_argument("empirical_reliability: empty test set");
  int hits = 0;
  for (const auto& cs : test_set) {
    if (direct_sinr(cs, design.b, design.g) >= tau) ++hits;
  }
  const double p_hat = static_cast<double>(hits) / static_cast<double>(test_set.size());
  return {p_hat, wilson_interval(hits, static_cast<int>(test_set.size()))};
}

SinrStats sinr_statistics(const solve::Design& design,
                          const std::vector<sinr::SinrCoefficients>& samples, double epsilon) {
  if (samples.empty()) throw std::invalid_argument("sinr_statistics: empty sample set");
  const std::vector<double> values = design_sinrs(design, samples);
  const auto s = static_cast<double>(values.size());

  SinrStats stats;
  stats.mean = pairwise_sum(values) / s;
  if (values.size() > 1) {
    std::vector<double> sq;
    sq.reserve(values.size());
    for (double v : values) sq.push_back((v - stats.mean) * (v - stats.mean));
    stats.variance = pairwise_sum(sq) / (s - 1.0);
  }
  std::vector<double> sorted = values;
  const int idx = lower_tail_quantile_index(epsilon, static_cast<int>(values.size()));
  auto nth = sorted.begin() + (idx - 1);
  std::nth_element(sorted.begin(), nth, sorted.end());
  stats.quantile = *nth;
  return stats;
}

CeilingGapStats ceiling_gap(const solve::Design& design,
                            const std::vector<sinr::SinrCoefficients>& samples) {
  CeilingGapStats out;
  out.min = std::numeric_limits<double>::infinity();
  out.max = -std::numeric_limits<double>::infinity();
  std::vector<double> ratios;
  ratios.reserve(samples.size());
  for (const auto& cs : samples) {
    const double ceiling = bounds::high_gain_ceiling(cs, design.b);
    if (!std::isfinite(ceiling) || ceiling <= 0.0) {
      ++out.excluded;
      continue;
    }
    const double ratio = direct_sinr(cs, design.b, design.g) / ceiling;
    ratios.push_back(ratio);
    out.min = std::min(out.min, ratio);
    out.max = std::max(out.max, ratio);
  }
  out.counted = static_cast<int>(ratios.size());
  if (!ratios.empty()) {
    out.mean = pairwise_sum(ratios) / static_cast<double>(ratios.size());
  } else {
    out.min = 0.0;
    out.max = 0.0;
  }
  return out;
}

int count_violations(const std::vector<sinr::SinrCoefficients>& samples, const Eigen::VectorXd& b,
                     double g, double tau) {
  int bad = 0;
  for (const auto& cs : samples) {
    if (direct_sinr(cs, b, g) < tau) ++bad;
  }
  return bad;
}

void require_distinct_seed(std::uint64_t train_seed, std::uint64_t test_seed) {
  if (train_seed == test_seed) {
    throw std::invalid_argument(
        "validation seed equals the training seed; out-of-sample testing requires an independent draw");
  }
}

ValidationReport make_report(const solve::Design& design,
                             const std::vector<sinr::SinrCoefficients>& test_set, double epsilon,
                             std::uint64_t test_seed) {
  ValidationReport report;
  auto [p_hat, ci] = empirical_reliability(design, test_set, design.tau);
  report.p_succ_hat = p_hat;
  report.ci95 = ci;
  report.stats = sinr_statistics(design, test_set, epsilon);
  report.ceiling = ceiling_gap(design, test_set);
  report.s_test = static_cast<int>(test_set.size());
  report.test_seed = test_seed;
  return report;
}

}  // namespace actris::validate
