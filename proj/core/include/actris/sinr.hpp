// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "actris/config.hpp"

namespace actris::sinr {

/// Per-sample real coefficients of the quadratic SINR form
///
///   SINR(b, g) = P_d (A + g B(b) + g^2 C(b))
///              / (D0 + g^2 D1 + sum_m P_m (A_m + g B_m(b) + g^2 C_m(b)))
///
/// with B(b) = 2 rho |d| b'r and C(b) = rho^2 ((b'r)^2 + (b'c)^2). The rank-2
/// factors (r, c) of each quadratic form are kept instead of the dense N x N
/// matrix Q = r r' + c c'.
struct SinrCoefficients {
  double abs_d = 0.0;
  double a = 0.0;  // abs_d^2
  Eigen::VectorXd r, c;

  std::vector<double> abs_dm;
  std::vector<double> a_m;
  std::vector<Eigen::VectorXd> r_m, c_m;

  double d0 = 0.0;  // N_0 ||w||^2 + baseline folded amplifier noise
  double d1 = 0.0;  // gain-dependent folded amplifier noise
  double l = 0.0;   // ||H_r^H w||^2

  // copied scenario scalars
  double rho = 1.0;
  double p_d = 1.0;
  std::vector<double> p_m;
  double n_0 = 1.0;
  double w_norm_sq = 1.0;

  int n() const { return static_cast<int>(r.size()); }
  int m() const { return static_cast<int>(a_m.size()); }
};

/// b-dependent numerator/denominator pieces at one configuration.
struct ConfigTerms {
  double b_lin = 0.0;  // B(b)
  double c_quad = 0.0; // C(b)
  std::vector<double> b_lin_m;
  std::vector<double> c_quad_m;
};

/// Folded amplifier-noise quadratic forms w^H H_r Sigma H_r^H w for the
/// baseline and excess covariances. Total folded variance at gain g is
/// d0_ra + g^2 * d1_ra.
struct FoldedNoise {
  double d0_ra = 0.0;
  double d1_ra = 0.0;
};

/// Evaluates both folded-noise quadratic forms for the given model.
/// Throws std::domain_error when a correlated covariance is not symmetric PSD.
FoldedNoise folded_noise_variance(const Eigen::MatrixXcd& h_r, const Eigen::VectorXcd& w,
                                  const AmpNoiseModel& model);

/// Rayleigh-Ritz bracket [lambda_min(Sigma) L, lambda_max(Sigma) L] of the
/// folded quadratic form, L = ||H_r^H w||^2.
std::pair<double, double> ritz_bounds(const Eigen::MatrixXcd& h_r, const Eigen::VectorXcd& w,
                                      const Eigen::MatrixXd& sigma);

/// B/C terms for configuration b (entries +-1).
ConfigTerms config_terms(const SinrCoefficients& coeffs, const Eigen::VectorXd& b);

/// Instantaneous SINR at configuration b and amplifier gain g >= 0.
double evaluate_sinr(const SinrCoefficients& coeffs, const Eigen::VectorXd& b, double g);

/// Same, reusing precomputed configuration terms.
double evaluate_sinr(const SinrCoefficients& coeffs, const ConfigTerms& terms, double g);

}  // namespace actris::sinr
