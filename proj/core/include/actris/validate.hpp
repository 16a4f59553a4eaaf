// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "actris/sinr.hpp"
#include "actris/solve.hpp"

namespace actris::validate {

struct Ci {
  double lo = 0.0;
  double hi = 0.0;
};

/// Ascending order-statistic index (1-based) of the lower-tail quantile
/// convention: ceil(epsilon * S), clamped to [1, S]. With this convention
/// "quantile >= tau" aligns with "non-outage fraction >= 1 - epsilon".
int lower_tail_quantile_index(double epsilon, int s);

/// Wilson 95% score interval for a binomial proportion.
Ci wilson_interval(int successes, int trials);

/// Out-of-sample reliability p_hat = #{SINR >= tau}/S_test with its interval.
std::pair<double, Ci> empirical_reliability(const solve::Design& design,
                                            const std::vector<sinr::SinrCoefficients>& test_set,
                                            double tau);

struct SinrStats {
  double mean = 0.0;
  double variance = 0.0;  // unbiased (S-1)
  double quantile = 0.0;  // lower-tail (1-epsilon) guarantee value
};

SinrStats sinr_statistics(const solve::Design& design,
                          const std::vector<sinr::SinrCoefficients>& samples, double epsilon);

struct CeilingGapStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  int counted = 0;
  int excluded = 0;  // samples with a degenerate (unbounded or zero) ceiling
};

/// Per-sample ratio SINR(b*, g*) / ceiling(b*), aggregated. Ratios are
/// reported raw (they may exceed 1 at finite gain when the cross term helps).
CeilingGapStats ceiling_gap(const solve::Design& design,
                            const std::vector<sinr::SinrCoefficients>& samples);

/// Independent straight-loop violation counter used to re-check the solver
/// contract; deliberately avoids the solver's interval algebra and the rank-2
/// evaluation path.
int count_violations(const std::vector<sinr::SinrCoefficients>& samples, const Eigen::VectorXd& b,
                     double g, double tau);

/// Hard error when a validation draw would reuse the training stream.
void require_distinct_seed(std::uint64_t train_seed, std::uint64_t test_seed);

struct ValidationReport {
  double p_succ_hat = 0.0;
  Ci ci95;
  SinrStats stats;
  CeilingGapStats ceiling;
  int s_test = 0;
  std::uint64_t test_seed = 0;
  int violated_on_train = -1;  // filled when the training set is available
};

ValidationReport make_report(const solve::Design& design,
                             const std::vector<sinr::SinrCoefficients>& test_set, double epsilon,
                             std::uint64_t test_seed);

}  // namespace actris::validate
