// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "actris/sinr.hpp"

namespace actris::bounds {

/// Smallest/largest eigenvalue of Q = r r' + c c', computed in closed form
/// from the 2x2 Gram matrix of the factors. For N > 2 the smallest eigenvalue
/// is 0 (rank(Q) <= 2); for N = 1 the single eigenvalue is r^2 + c^2.
struct QEigs {
  double lam_min = 0.0;
  double lam_max = 0.0;
};
QEigs rank2_eigs(const Eigen::VectorXd& r, const Eigen::VectorXd& c);

/// Configuration-independent envelope ingredients:
/// b_bar = 2 rho |d| ||r||_1 bounds |B(b)|, and
/// c_lo = rho^2 N lambda_min(Q) <= C(b) <= c_hi = rho^2 N lambda_max(Q).
struct EnvelopeTerms {
  double b_bar = 0.0;
  double c_lo = 0.0, c_hi = 0.0;
  double lam_min_q = 0.0, lam_max_q = 0.0;
  std::vector<double> b_bar_m, c_lo_m, c_hi_m, lam_min_qm, lam_max_qm;
};

EnvelopeTerms envelope_terms(const sinr::SinrCoefficients& coeffs);

/// Realization-wise envelope values at one gain. The lower-envelope numerator
/// and the interferer terms of the lower denominator are clipped at 0 (each
/// true term is a squared magnitude, so the clip keeps the bounds valid); the
/// flags record when a clip was active. ub_unbounded marks the degenerate
/// nonpositive lower-denominator case; ub then carries +inf in memory and is
/// serialized as a tagged value, never a raw float.
struct Envelope {
  double lb = 0.0;
  double ub = 0.0;
  bool ub_unbounded = false;
  bool lb_clipped = false;
  bool intf_clipped = false;
};

Envelope sinr_envelopes(const sinr::SinrCoefficients& coeffs, const EnvelopeTerms& terms, double g);

/// Magnitude-squared bracket (sqrt(A) -+ sqrt(C_max) g)^2 of |d + rho g u'b|^2
/// with C_max = rho^2 N lambda_max(Q); the lower side is clipped at 0.
std::pair<double, double> small_g_triangle_bounds(double a, double c_max, double g);

/// Realization-wise g -> infinity SINR limit P_d C(b) / (D1 + sum P_m C_m(b)).
/// Returns +inf when the limit denominator vanishes with a positive numerator,
/// and 0 when the numerator vanishes.
double high_gain_ceiling(const sinr::SinrCoefficients& coeffs, const Eigen::VectorXd& b);
double high_gain_ceiling(const sinr::SinrCoefficients& coeffs, const sinr::ConfigTerms& terms);

/// Configuration-independent upper bound on the ceiling,
/// P_d rho^2 lambda_max(Q) N / (D1 + sum_m P_m rho^2 lambda_min(Q_m) N).
double ceiling_upper_bound(const sinr::SinrCoefficients& coeffs, const EnvelopeTerms& terms);

/// Passive reference P_d A / (D0 + sum_m P_m A_m).
double passive_sinr(const sinr::SinrCoefficients& coeffs);

/// Sufficient condition for amplification to beat passive reflection:
/// ceiling_upper_bound > passive_sinr.
bool amplification_beneficial(const sinr::SinrCoefficients& coeffs, const EnvelopeTerms& terms);

}  // namespace actris::bounds
