// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "actris/common.hpp"
#include "actris/model_io.hpp"
#include "actris/sinr.hpp"

namespace actris::solve {

/// Closed interval within [0, g_max].
struct GInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Sorted disjoint closed intervals.
using GIntervalSet = std::vector<GInterval>;

/// Solution set of a g^2 + b g + c >= 0 intersected with [0, g_max], covering
/// all sign and degeneracy cases (a = 0 linear, a = b = 0 constant).
GIntervalSet solve_quadratic_ge0(double a, double b, double c, double g_max);

/// Gains at which sample `cs` meets the threshold tau under configuration b:
/// the per-sample feasibility condition rearranged as a quadratic in g.
GIntervalSet feasible_g_intervals(const sinr::SinrCoefficients& cs, const Eigen::VectorXd& b,
                                  double tau, double g_max);

enum class OracleKind { kExact, kLocalSearch, kExternal };
std::string oracle_name(OracleKind kind);
OracleKind oracle_from_name(const std::string& name);

/// A configuration meeting the violation budget, with the coverage achieved
/// and the width of the maximal-coverage gain run it was taken from.
struct FeasiblePoint {
  Eigen::VectorXd b;
  double g = 0.0;
  int covered = 0;
  double run_width = 0.0;
};

struct ExactOptions {
  int n_enum_cap = 16;
  int threads = 0;
};

/// Exact kappa-budget feasibility at threshold tau: enumerates the 2^(N-1)
/// sign classes of b (b and -b share interval geometry up to reflection of the
/// linear term), sweeps per-sample feasible gain intervals, and returns the
/// coverage-margin-maximizing (b, g), with g the midpoint of the widest
/// maximal-coverage run. Throws CapabilityError above the enumeration cap.
std::optional<FeasiblePoint> check_feasible_exact(const std::vector<sinr::SinrCoefficients>& coeffs,
                                                  double tau, int kappa, double g_max,
                                                  const ExactOptions& options = {});

struct LocalSearchOptions {
  int restarts = 16;
  std::uint64_t seed = 1;
};

/// Randomized multi-start single-bit-flip hill climbing on b, scoring by
/// (coverage, run width). Sound (returned pairs are re-verified against the
/// budget) but incomplete.
std::optional<FeasiblePoint> check_feasible_local(const std::vector<sinr::SinrCoefficients>& coeffs,
                                                  double tau, int kappa, double g_max,
                                                  const LocalSearchOptions& options = {});

/// Solution of the reliability design with provenance.
struct Design {
  Eigen::VectorXd b;
  double g = 0.0;
  double tau = 0.0;
  OracleKind oracle = OracleKind::kExact;
  int violated_on_train = 0;

  std::string config_hash_hex;
  std::string scenario_hash_hex;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  int s_count = 0;
  int kappa = 0;
  double eps_tau = 0.0;
  int iterations = 0;
  int expansions = 0;
};

using FeasibilityOracle = std::function<std::optional<FeasiblePoint>(double)>;

struct BisectOptions {
  double tau_lo = 0.0;
  double tau_hi = 0.0;  // <= 0 selects the envelope-based warm start
  double eps_tau = 1e-3;
  int max_expansions = 60;
};

/// Envelope-based upper bound on any achievable threshold (max over samples
/// and a gain grid of the upper envelope), used to warm-start the bracket.
double default_tau_upper_bound(const std::vector<sinr::SinrCoefficients>& coeffs, double g_max);

/// Bisection on tau with a pluggable feasibility oracle. The returned design
/// carries tau* = the last feasible bracket edge and the incumbent found
/// there; the incumbent is refreshed by one oracle call at tau* if it was
/// stored at a different threshold. Oracle fields other than (b, g, tau,
/// iterations, expansions, violated_on_train, epsilon, s_count, kappa,
/// eps_tau) are left for the caller to fill.
Design bisect_tau(const FeasibilityOracle& oracle, const std::vector<sinr::SinrCoefficients>& coeffs,
                  double epsilon, double g_max, const BisectOptions& options = {});

/// 1-D gain refinement at fixed b*: among gains meeting the kappa budget at
/// tau* (from the interval sweep), returns the one maximizing the training
/// (1-epsilon)-quantile of SINR; falls back to incumbent_g when the sweep is
/// empty. Never returns a gain with a lower training quantile than the
/// incumbent.
double refine_gain(const std::vector<sinr::SinrCoefficients>& coeffs, const Eigen::VectorXd& b_star,
                   double tau_star, int kappa, double epsilon, double g_max, double incumbent_g);

/// Largest threshold passing the kappa budget at a fixed gain, maximized over
/// all configurations by Gray-code enumeration (the per-configuration optimum
/// is the ascending order statistic of the sample SINRs at index kappa+1).
struct FixedGainResult {
  double value = 0.0;
  Eigen::VectorXd b;
};
FixedGainResult max_tau_at_gain(const std::vector<sinr::SinrCoefficients>& coeffs, double g, int kappa,
                                const ExactOptions& options = {});
FixedGainResult max_tau_at_gain_local(const std::vector<sinr::SinrCoefficients>& coeffs, double g,
                                      int kappa, const LocalSearchOptions& options = {});

/// Best training (1-epsilon)-quantile of SINR over configurations at a fixed
/// gain (ascending order statistic at index ceil(epsilon S)).
FixedGainResult max_quantile_at_gain(const std::vector<sinr::SinrCoefficients>& coeffs, double g,
                                     double epsilon, const ExactOptions& options = {});
FixedGainResult max_quantile_at_gain_local(const std::vector<sinr::SinrCoefficients>& coeffs, double g,
                                           double epsilon, const LocalSearchOptions& options = {});

/// Strict violation count #{s : SINR_s(b, g) < tau}.
int count_budget_violations(const std::vector<sinr::SinrCoefficients>& coeffs, const Eigen::VectorXd& b,
                            double g, double tau);

/// Verifies an externally solved assignment against the budget before
/// acceptance; returns nullopt when the assignment fails the budget or the
/// gain cap.
std::optional<FeasiblePoint> ingest_external_solution(const std::vector<sinr::SinrCoefficients>& coeffs,
                                                      double tau, int kappa, double g_max,
                                                      const saa::ExternalSolution& sol);

}  // namespace actris::solve
