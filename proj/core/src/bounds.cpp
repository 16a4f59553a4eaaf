// SPDX-License-Identifier: Apache-2.0
#include "actris/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace actris::bounds {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

QEigs rank2_eigs(const Eigen::VectorXd& r, const Eigen::VectorXd& c) {
  const double g11 = r.squaredNorm();
  const double g22 = c.squaredNorm();
  const double g12 = r.dot(c);
  const double mid = 0.5 * (g11 + g22);
  const double rad = std::sqrt(0.25 * (g11 - g22) * (g11 - g22) + g12 * g12);
  const double mu_hi = mid + rad;
  const double mu_lo = std::max(mid - rad, 0.0);
  QEigs out;
  out.lam_max = mu_hi;
  const auto n = r.size();
  if (n == 1) {
    out.lam_min = mu_hi;  // Q is the 1x1 matrix [r^2 + c^2]
  } else if (n == 2) {
    out.lam_min = mu_lo;
  } else {
    out.lam_min = 0.0;
  }
  return out;
}

EnvelopeTerms envelope_terms(const sinr::SinrCoefficients& coeffs) {
  EnvelopeTerms t;
  const double rho2 = coeffs.rho * coeffs.rho;
  const double n = static_cast<double>(coeffs.n());
  const QEigs eq = rank2_eigs(coeffs.r, coeffs.c);
  t.lam_min_q = eq.lam_min;
  t.lam_max_q = eq.lam_max;
  t.b_bar = 2.0 * coeffs.rho * coeffs.abs_d * coeffs.r.lpNorm<1>();
  t.c_lo = rho2 * n * eq.lam_min;
  t.c_hi = rho2 * n * eq.lam_max;
  const int m = coeffs.m();
  t.b_bar_m.resize(static_cast<std::size_t>(m));
  t.c_lo_m.resize(static_cast<std::size_t>(m));
  t.c_hi_m.resize(static_cast<std::size_t>(m));
  t.lam_min_qm.resize(static_cast<std::size_t>(m));
  t.lam_max_qm.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const QEigs em = rank2_eigs(coeffs.r_m[idx], coeffs.c_m[idx]);
    t.lam_min_qm[idx] = em.lam_min;
    t.lam_max_qm[idx] = em.lam_max;
    t.b_bar_m[idx] = 2.0 * coeffs.rho * coeffs.abs_dm[idx] * coeffs.r_m[idx].lpNorm<1>();
    t.c_lo_m[idx] = rho2 * n * em.lam_min;
    t.c_hi_m[idx] = rho2 * n * em.lam_max;
  }
  return t;
}

Envelope sinr_envelopes(const sinr::SinrCoefficients& coeffs, const EnvelopeTerms& terms, double g) {
  Envelope e;
  const double g2 = g * g;

  double num_lo = coeffs.a - g * terms.b_bar + g2 * terms.c_lo;
  if (num_lo < 0.0) {
    num_lo = 0.0;
    e.lb_clipped = true;
  }
  const double num_hi = coeffs.a + g * terms.b_bar + g2 * terms.c_hi;

  double den_lo = coeffs.d0 + g2 * coeffs.d1;
  double den_hi = den_lo;
  for (int i = 0; i < coeffs.m(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double a_m = coeffs.a_m[idx];
    double term_lo = a_m - g * terms.b_bar_m[idx] + g2 * terms.c_lo_m[idx];
    if (term_lo < 0.0) {
      term_lo = 0.0;
      e.intf_clipped = true;
    }
    den_lo += coeffs.p_m[idx] * term_lo;
    den_hi += coeffs.p_m[idx] * (a_m + g * terms.b_bar_m[idx] + g2 * terms.c_hi_m[idx]);
  }

  e.lb = coeffs.p_d * num_lo / den_hi;
  if (den_lo > 0.0) {
    e.ub = coeffs.p_d * num_hi / den_lo;
  } else {
    e.ub = kInf;
    e.ub_unbounded = true;
  }
  return e;
}

std::pair<double, double> small_g_triangle_bounds(double a, double c_max, double g) {
  const double spread = std::sqrt(c_max) * g;
  if (spread == 0.0) return {a, a};
  const double root_a = std::sqrt(a);
  const double lo = std::max(root_a - spread, 0.0);
  const double hi = root_a + spread;
  return {lo * lo, hi * hi};
}

double high_gain_ceiling(const sinr::SinrCoefficients& coeffs, const sinr::ConfigTerms& terms) {
  const double num = coeffs.p_d * terms.c_quad;
  double den = coeffs.d1;
  for (int i = 0; i < coeffs.m(); ++i) {
    den += coeffs.p_m[static_cast<std::size_t>(i)] * terms.c_quad_m[static_cast<std::size_t>(i)];
  }
  if (num == 0.0) return 0.0;
  if (den <= 0.0) return kInf;
  return num / den;
}

double high_gain_ceiling(const sinr::SinrCoefficients& coeffs, const Eigen::VectorXd& b) {
  return high_gain_ceiling(coeffs, sinr::config_terms(coeffs, b));
}

double ceiling_upper_bound(const sinr::SinrCoefficients& coeffs, const EnvelopeTerms& terms) {
  const double num = coeffs.p_d * terms.c_hi;
  double den = coeffs.d1;
  for (int i = 0; i < coeffs.m(); ++i) {
    den += coeffs.p_m[static_cast<std::size_t>(i)] * terms.c_lo_m[static_cast<std::size_t>(i)];
  }
  if (num == 0.0) return 0.0;
  if (den <= 0.0) return kInf;
  return num / den;
}

double passive_sinr(const sinr::SinrCoefficients& coeffs) {
  double den = coeffs.d0;
  for (int i = 0; i < coeffs.m(); ++i) {
    den += coeffs.p_m[static_cast<std::size_t>(i)] * coeffs.a_m[static_cast<std::size_t>(i)];
  }
  return coeffs.p_d * coeffs.a / den;
}

bool amplification_beneficial(const sinr::SinrCoefficients& coeffs, const EnvelopeTerms& terms) {
  return ceiling_upper_bound(coeffs, terms) > passive_sinr(coeffs);
}

}  // namespace actris::bounds
