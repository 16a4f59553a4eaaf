// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "actris/channel.hpp"
#include "actris/sinr.hpp"

namespace actris::saa {

/// Per-sample coefficients consumed by the lifted feasibility model: the SINR
/// coefficients plus the all-ones contractions q = Q 1 and q0 = 1'Q 1 of each
/// quadratic form, computed from the rank-2 factors.
struct SaaCoefficients {
  sinr::SinrCoefficients base;
  Eigen::VectorXd q;  // r (r'1) + c (c'1)
  double q0 = 0.0;    // (r'1)^2 + (c'1)^2
  std::vector<Eigen::VectorXd> q_m;
  std::vector<double> q0_m;
};

SaaCoefficients per_sample_coefficients(const channel::ScenarioSample& sample, const ScenarioConfig& cfg);
SaaCoefficients from_sinr(const sinr::SinrCoefficients& base);

/// One scenario feasibility row E_s(x; tau) in structured affine form over the
/// lifted variables (y, v, g, t, u, z, s, Z). The Z block is carried as rank-2
/// factor combinations; entries are materialized on demand.
struct ScenarioRowTerms {
  double constant = 0.0;
  double g_coef = 0.0;
  double t_coef = 0.0;
  Eigen::VectorXd u_coef, z_coef;
  // Z coefficient matrix as sum_k weight_k * f_k f_k'; entry (i,j) of the row
  // is sum_k weight_k f_k[i] f_k[j].
  std::vector<std::pair<double, const Eigen::VectorXd*>> z2_factors;

  double z2_entry(int i, int j) const;
};

ScenarioRowTerms scenario_row(const SaaCoefficients& cs, double tau);

/// Conservative Big-M constant (1 + eta_m) max_s { tau * R_hi_s - L_lo_s }
/// from term-wise interval bounds of the numerator and denominator halves over
/// the lifted box, floored at 0 so that E_s >= -M_big holds over the whole box
/// even when every row is box-satisfiable.
double compute_big_m(const std::vector<SaaCoefficients>& coeffs, double tau, double eta_m, double g_max);

struct VarInfo {
  std::string name;
  double lo = 0.0, hi = 0.0;
  bool integral = false;
};

/// constant + sum coef*x >= 0
struct LinearRow {
  std::string name;
  double constant = 0.0;
  std::vector<std::pair<int, double>> terms;
};

/// Mixed-integer conic feasibility model of the chance-constrained design at a
/// fixed threshold. Variable order: y[N], v[S], g, t, u[N], z[N], then s and Z
/// over the instantiated (i,j) pairs row-major. Row order: scenario rows,
/// violation budget, then McCormick blocks for u, z, s, Z. One rotated SOC
/// ||(2g, t-1)|| <= t+1 links t >= g^2.
struct LiftedModel {
  int n = 0;
  int s_count = 0;
  double tau = 0.0;
  double epsilon = 0.0;
  int kappa = 0;
  double g_max = 0.0;
  double big_m = 0.0;
  double eta_m = 0.0;
  bool dense = true;
  bool symmetry_rows = false;

  std::vector<VarInfo> vars;
  std::vector<LinearRow> rows;
  std::vector<std::pair<int, int>> mask;  // instantiated (i,j) pairs
  int soc_g = -1;
  int soc_t = -1;

  int y_index(int i) const { return i; }
  int v_index(int s) const { return n + s; }
  int g_index() const { return n + s_count; }
  int t_index() const { return n + s_count + 1; }
  int u_index(int i) const { return n + s_count + 2 + i; }
  int z_index(int i) const { return n + s_count + 2 + n + i; }
  int s_index(int pair) const { return n + s_count + 2 + 2 * n + pair; }
  int zz_index(int pair) const { return n + s_count + 2 + 2 * n + static_cast<int>(mask.size()) + pair; }

  int binary_count() const;
  int continuous_count() const;
  int linear_row_count() const { return static_cast<int>(rows.size()); }
};

struct BuildOptions {
  bool dense = true;         // instantiate every (i,j) pair including the diagonal
  double eta_m = 0.02;       // Big-M headroom; the usual range is [0.01, 0.05]
  bool symmetry_rows = false;  // optional s_ij = s_ji equality rows (off keeps the counts)
  int threads = 0;
};

/// Assembles the model; kappa = floor(epsilon * S).
LiftedModel build_feasibility_model(const std::vector<SaaCoefficients>& coeffs, double tau,
                                    double epsilon, double g_max, const BuildOptions& options = {});

/// constant + coef.x of one row.
double row_value(const LinearRow& row, const Eigen::VectorXd& x);

/// The exact lift of a concrete configuration: y=(b+1)/2, t=g^2, u=g y,
/// z=t y, s_ij=y_i y_j, Z_ij=t s_ij, with v set from `violated`.
Eigen::VectorXd exact_lift(const LiftedModel& model, const Eigen::VectorXd& b, double g,
                           const std::vector<bool>& violated);

/// Number of rows with constant + coef.x < -tol, plus SOC violation if any.
int count_violated_rows(const LiftedModel& model, const Eigen::VectorXd& x, double tol = 1e-9);

bool soc_satisfied(const LiftedModel& model, const Eigen::VectorXd& x, double tol = 1e-9);

}  // namespace actris::saa
