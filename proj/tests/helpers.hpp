// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "actris/channel.hpp"
#include "actris/config.hpp"
#include "actris/rng.hpp"
#include "actris/sinr.hpp"

namespace actris::testing {

/// Dense Q = r r' + c c' for oracle-style comparisons.
inline Eigen::MatrixXd dense_q(const Eigen::VectorXd& r, const Eigen::VectorXd& c) {
  return r * r.transpose() + c * c.transpose();
}

/// Random +-1 configuration from a dedicated stream.
inline Eigen::VectorXd random_b(int n, Philox& rng) {
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) b[i] = rng.next_below(2) == 0 ? 1.0 : -1.0;
  return b;
}

/// Exhaustive +-1 configurations (n <= 20).
inline std::vector<Eigen::VectorXd> all_b(int n) {
  std::vector<Eigen::VectorXd> out;
  const std::size_t total = 1ull << n;
  out.reserve(total);
  for (std::size_t mask = 0; mask < total; ++mask) {
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) b[i] = (mask >> i) & 1 ? -1.0 : 1.0;
    out.push_back(std::move(b));
  }
  return out;
}

/// Per-sample coefficient sets drawn from the normalized default setup.
inline std::vector<sinr::SinrCoefficients> draw_coeffs(int n, int m, int s, std::uint64_t seed,
                                                       bool keep_raw = false) {
  const ScenarioConfig cfg = ScenarioConfig::defaults(n, m);
  const auto samples = channel::draw_samples(cfg, seed, s, 1, keep_raw);
  std::vector<sinr::SinrCoefficients> out;
  out.reserve(samples.size());
  for (const auto& smp : samples) out.push_back(channel::make_sinr_coefficients(smp, cfg));
  return out;
}

/// Hand-built single-link coefficient set (no interferers) for constructed
/// instances with known algebra.
inline sinr::SinrCoefficients make_coeffs(double abs_d, const Eigen::VectorXd& r,
                                          const Eigen::VectorXd& c, double d0, double d1,
                                          double rho = 1.0, double p_d = 1.0) {
  sinr::SinrCoefficients k;
  k.abs_d = abs_d;
  k.a = abs_d * abs_d;
  k.r = r;
  k.c = c;
  k.d0 = d0;
  k.d1 = d1;
  k.rho = rho;
  k.p_d = p_d;
  k.n_0 = d0;
  k.w_norm_sq = 1.0;
  return k;
}

/// SINR recomputed from the raw channel draws (iid amplifier noise), used as
/// the quadratic-form oracle: P_d |d + rho g u'b|^2 over the folded-noise and
/// interference denominator, everything rebuilt from the matrices themselves.
inline double raw_channel_sinr(const channel::ScenarioSample& sample, const ScenarioConfig& cfg,
                               const Eigen::VectorXd& b, double g) {
  const auto& raw = sample.raw.value();
  const Eigen::VectorXcd bc = b.cast<std::complex<double>>();
  auto udotb = [&](const Eigen::VectorXcd& u) { return u.cwiseProduct(bc).sum(); };
  const double num = cfg.p_d * std::norm(raw.d + cfg.rho * g * udotb(raw.u));
  const double l = (raw.h_r.adjoint() * cfg.w).squaredNorm();
  double den = cfg.n_0 * cfg.w_norm_sq() +
               (cfg.amp_noise.sigma_min_sq + cfg.amp_noise.eta * g * g) * l;
  for (int m = 0; m < cfg.m; ++m) {
    const auto mu = static_cast<std::size_t>(m);
    den += cfg.p_m[mu] * std::norm(raw.d_m[mu] + cfg.rho * g * udotb(raw.u_m[mu]));
  }
  return num / den;
}

}  // namespace actris::testing
