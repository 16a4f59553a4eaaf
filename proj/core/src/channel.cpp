// SPDX-License-Identifier: Apache-2.0
#include "actris/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "actris/common.hpp"

namespace actris::channel {

Eigen::VectorXcd steering_vector(int len, double angle) {
  Eigen::VectorXcd v(len);
  const double slope = M_PI * std::sin(angle);
  for (int k = 0; k < len; ++k) {
    v[k] = std::polar(1.0, slope * k);
  }
  return v;
}

LosMatrices los_matrices(const ScenarioConfig& cfg) {
  LosMatrices out;
  switch (cfg.los.kind) {
    case LosConfig::Kind::kExplicit:
      out.direct = cfg.los.direct;
      out.sat_ris = cfg.los.sat_ris;
      out.ris_rx = cfg.los.ris_rx;
      out.intf_direct = cfg.los.intf_direct;
      out.intf_sat_ris = cfg.los.intf_sat_ris;
      return out;
    case LosConfig::Kind::kOnes:
      out.direct = Eigen::MatrixXcd::Ones(cfg.n_r, cfg.n_t);
      out.sat_ris = Eigen::MatrixXcd::Ones(cfg.n, cfg.n_t);
      out.ris_rx = Eigen::MatrixXcd::Ones(cfg.n_r, cfg.n);
      out.intf_direct.assign(static_cast<std::size_t>(cfg.m), Eigen::MatrixXcd::Ones(cfg.n_r, cfg.n_t));
      out.intf_sat_ris.assign(static_cast<std::size_t>(cfg.m), Eigen::MatrixXcd::Ones(cfg.n, cfg.n_t));
      return out;
    case LosConfig::Kind::kSteering:
      break;
  }
  // Rank-1 array responses; the desired satellite and the receiver sit at the
  // configured azimuths, each interferer at its own.
  const Eigen::VectorXcd a_tx = steering_vector(cfg.n_t, 0.0);
  const Eigen::VectorXcd a_rx_des = steering_vector(cfg.n_r, cfg.los.desired_angle);
  const Eigen::VectorXcd a_ris_des = steering_vector(cfg.n, cfg.los.desired_angle);
  out.direct = a_rx_des * a_tx.transpose();
  out.sat_ris = a_ris_des * a_tx.transpose();
  out.ris_rx = steering_vector(cfg.n_r, 0.0) * steering_vector(cfg.n, 0.0).transpose();
  out.intf_direct.reserve(static_cast<std::size_t>(cfg.m));
  out.intf_sat_ris.reserve(static_cast<std::size_t>(cfg.m));
  for (int i = 0; i < cfg.m; ++i) {
    const double ang = cfg.los.interferer_angles[static_cast<std::size_t>(i)];
    out.intf_direct.push_back(steering_vector(cfg.n_r, ang) * a_tx.transpose());
    out.intf_sat_ris.push_back(steering_vector(cfg.n, ang) * a_tx.transpose());
  }
  return out;
}

Eigen::MatrixXcd rician_matrix(int rows, int cols, double k, double beta,
                               const Eigen::MatrixXcd& h_los, Philox& rng) {
  if (k < 0 || !std::isfinite(k)) throw std::domain_error("rician_matrix: K must be finite and >= 0");
  if (beta < 0) throw std::domain_error("rician_matrix: beta must be >= 0");
  if (h_los.rows() != rows || h_los.cols() != cols) {
    throw std::invalid_argument("rician_matrix: LoS shape mismatch");
  }
  const double los_scale = std::sqrt(beta * k / (k + 1.0));
  const double nlos_scale = std::sqrt(beta / (k + 1.0));
  Eigen::MatrixXcd h(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      h(i, j) = los_scale * h_los(i, j) + nlos_scale * rng.next_cnormal();
    }
  }
  return h;
}

std::pair<std::complex<double>, Eigen::VectorXcd> cascade_coefficients(
    const Eigen::VectorXcd& w, const Eigen::VectorXcd& f, const Eigen::MatrixXcd& h_d,
    const Eigen::MatrixXcd& g_t, const Eigen::MatrixXcd& h_r) {
  if (h_d.rows() != w.size() || h_d.cols() != f.size() || g_t.cols() != f.size() ||
      h_r.rows() != w.size() || h_r.cols() != g_t.rows()) {
    throw std::invalid_argument("cascade_coefficients: inconsistent dimensions");
  }
  const std::complex<double> d = (w.adjoint() * h_d * f)(0, 0);
  const Eigen::VectorXcd rx_proj = (h_r.adjoint() * w).conjugate();  // entries w^H h_{r,i}
  const Eigen::VectorXcd tx_proj = g_t * f;                          // entries g_{t,i}' f
  return {d, rx_proj.cwiseProduct(tx_proj)};
}

PhaseAligned phase_align(std::complex<double> d, const Eigen::VectorXcd& u) {
  PhaseAligned out;
  out.abs_d = std::abs(d);
  const double phase = (d == std::complex<double>(0.0, 0.0)) ? 0.0 : std::arg(d);
  const Eigen::VectorXcd utilde = u * std::polar(1.0, -phase);
  out.r = utilde.real();
  out.c = utilde.imag();
  return out;
}

ScenarioSample sample_scenario(const ScenarioConfig& cfg, std::uint64_t seed,
                               std::uint32_t sample_index, bool keep_raw) {
  const LosMatrices los = los_matrices(cfg);

  Philox rng_d(seed, sample_index, rng_domain::kDirect);
  Philox rng_t(seed, sample_index, rng_domain::kSatRis);
  Philox rng_r(seed, sample_index, rng_domain::kRisRx);

  RawChannels raw;
  raw.h_d = rician_matrix(cfg.n_r, cfg.n_t, cfg.direct.k, cfg.direct.beta, los.direct, rng_d);
  raw.g_t = rician_matrix(cfg.n, cfg.n_t, cfg.sat_ris.k, cfg.sat_ris.beta, los.sat_ris, rng_t);
  raw.h_r = rician_matrix(cfg.n_r, cfg.n, cfg.ris_rx.k, cfg.ris_rx.beta, los.ris_rx, rng_r);
  for (int m = 0; m < cfg.m; ++m) {
    const auto idx = static_cast<std::size_t>(m);
    Philox rng_md(seed, sample_index, rng_domain::interferer_direct(m));
    Philox rng_mt(seed, sample_index, rng_domain::interferer_sat_ris(m));
    raw.h_dm.push_back(rician_matrix(cfg.n_r, cfg.n_t, cfg.intf_direct[idx].k, cfg.intf_direct[idx].beta,
                                     los.intf_direct[idx], rng_md));
    raw.g_tm.push_back(rician_matrix(cfg.n, cfg.n_t, cfg.intf_sat_ris[idx].k, cfg.intf_sat_ris[idx].beta,
                                     los.intf_sat_ris[idx], rng_mt));
  }

  ScenarioSample s;
  s.index = sample_index;
  s.seed = seed;

  auto [d, u] = cascade_coefficients(cfg.w, cfg.f, raw.h_d, raw.g_t, raw.h_r);
  raw.d = d;
  raw.u = u;
  s.desired = phase_align(d, u);

  s.psi = cfg.p_d * (raw.g_t * cfg.f).cwiseAbs2();
  for (int m = 0; m < cfg.m; ++m) {
    const auto idx = static_cast<std::size_t>(m);
    auto [dm, um] = cascade_coefficients(cfg.w, cfg.f_m[idx], raw.h_dm[idx], raw.g_tm[idx], raw.h_r);
    raw.d_m.push_back(dm);
    raw.u_m.push_back(um);
    s.interferers.push_back(phase_align(dm, um));
    s.psi += cfg.p_m[idx] * (raw.g_tm[idx] * cfg.f_m[idx]).cwiseAbs2();
  }

  s.l = (raw.h_r.adjoint() * cfg.w).squaredNorm();
  const sinr::FoldedNoise fn = sinr::folded_noise_variance(raw.h_r, cfg.w, cfg.amp_noise);
  s.d0 = cfg.n_0 * cfg.w_norm_sq() + fn.d0_ra;
  s.d1 = fn.d1_ra;

  if (keep_raw) s.raw = std::move(raw);
  return s;
}

std::vector<ScenarioSample> draw_samples(const ScenarioConfig& cfg, std::uint64_t seed, int count,
                                         int threads, bool keep_raw) {
  std::vector<ScenarioSample> out(static_cast<std::size_t>(count));
  parallel_for(static_cast<std::size_t>(count), threads, [&](std::size_t i) {
    out[i] = sample_scenario(cfg, seed, static_cast<std::uint32_t>(i), keep_raw);
  });
  return out;
}

sinr::SinrCoefficients make_sinr_coefficients(const ScenarioSample& sample, const ScenarioConfig& cfg) {
  sinr::SinrCoefficients k;
  k.abs_d = sample.desired.abs_d;
  k.a = k.abs_d * k.abs_d;
  k.r = sample.desired.r;
  k.c = sample.desired.c;
  const std::size_t m = sample.interferers.size();
  k.abs_dm.resize(m);
  k.a_m.resize(m);
  k.r_m.resize(m);
  k.c_m.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    k.abs_dm[i] = sample.interferers[i].abs_d;
    k.a_m[i] = k.abs_dm[i] * k.abs_dm[i];
    k.r_m[i] = sample.interferers[i].r;
    k.c_m[i] = sample.interferers[i].c;
  }
  k.d0 = sample.d0;
  k.d1 = sample.d1;
  k.l = sample.l;
  k.rho = cfg.rho;
  k.p_d = cfg.p_d;
  k.p_m = cfg.p_m;
  k.n_0 = cfg.n_0;
  k.w_norm_sq = cfg.w_norm_sq();
  return k;
}

}  // namespace actris::channel
