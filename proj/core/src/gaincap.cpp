// SPDX-License-Identifier: Apache-2.0
#include "actris/gaincap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "actris/common.hpp"

namespace actris::gaincap {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double eirp_from_level(double level, double p_cell_max, double rho) {
  if (level <= 0.0) return kInf;
  return std::sqrt(p_cell_max) / (rho * std::sqrt(level));
}
}  // namespace

double g_stab(double mu_safety, double mag) {
  if (!(mu_safety > 0.0 && mu_safety < 1.0)) throw std::domain_error("g_stab: mu_safety must lie in (0, 1)");
  if (!(mag > 0.0)) throw std::domain_error("g_stab: MAG must be > 0");
  return mu_safety * mag;
}

std::vector<double> psi_max_per_sample(const std::vector<channel::ScenarioSample>& samples) {
  if (samples.empty()) throw std::invalid_argument("psi_max_per_sample: empty sample set");
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.psi.maxCoeff());
  return out;
}

double g_eirp_worst_case(const std::vector<double>& psi_max, double p_cell_max, double rho) {
  if (psi_max.empty()) throw std::invalid_argument("g_eirp_worst_case: empty sample set");
  if (!(p_cell_max > 0.0)) throw std::domain_error("g_eirp_worst_case: P_cell_max must be > 0");
  if (!(rho > 0.0 && rho <= 1.0)) throw std::domain_error("g_eirp_worst_case: rho must lie in (0, 1]");
  return eirp_from_level(*std::max_element(psi_max.begin(), psi_max.end()), p_cell_max, rho);
}

double g_eirp_quantile(const std::vector<double>& psi_max, double alpha, double p_cell_max, double rho) {
  if (psi_max.empty()) throw std::invalid_argument("g_eirp_quantile: empty sample set");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("g_eirp_quantile: alpha must lie in (0, 1)");
  if (!(p_cell_max > 0.0)) throw std::domain_error("g_eirp_quantile: P_cell_max must be > 0");
  if (!(rho > 0.0 && rho <= 1.0)) throw std::domain_error("g_eirp_quantile: rho must lie in (0, 1]");
  std::vector<double> sorted = psi_max;
  std::sort(sorted.begin(), sorted.end());
  const auto s = static_cast<double>(sorted.size());
  auto index = static_cast<std::size_t>(std::ceil((1.0 - alpha) * s));
  index = std::clamp<std::size_t>(index, 1, sorted.size());
  return eirp_from_level(sorted[index - 1], p_cell_max, rho);
}

double g_eirp_cantelli(const std::vector<double>& psi_max, double alpha, double p_cell_max, double rho) {
  if (psi_max.size() < 2) throw std::invalid_argument("g_eirp_cantelli: need at least two samples");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("g_eirp_cantelli: alpha must lie in (0, 1)");
  if (!(p_cell_max > 0.0)) throw std::domain_error("g_eirp_cantelli: P_cell_max must be > 0");
  if (!(rho > 0.0 && rho <= 1.0)) throw std::domain_error("g_eirp_cantelli: rho must lie in (0, 1]");
  const double mu = pairwise_sum(psi_max) / static_cast<double>(psi_max.size());
  std::vector<double> sq;
  sq.reserve(psi_max.size());
  for (double v : psi_max) sq.push_back((v - mu) * (v - mu));
  const double var = pairwise_sum(sq) / static_cast<double>(psi_max.size() - 1);
  const double c_alpha = std::sqrt((1.0 - alpha) / alpha);
  return eirp_from_level(mu + c_alpha * std::sqrt(var), p_cell_max, rho);
}

double g_max(double stab, double eirp) {
  if (!(stab >= 0.0) || !(eirp >= 0.0)) throw std::domain_error("g_max: bounds must be >= 0");
  return std::min(stab, eirp);
}

GainCap compute_gain_cap(const ScenarioConfig& cfg, const std::vector<channel::ScenarioSample>& samples) {
  GainCap cap;
  cap.rule = cfg.gain_cap.rule;
  cap.g_stab = g_stab(cfg.gain_cap.mu_safety, cfg.gain_cap.mag);
  const std::vector<double> psi = psi_max_per_sample(samples);
  cap.sample_count = static_cast<int>(psi.size());
  cap.psi_max_overall = *std::max_element(psi.begin(), psi.end());
  switch (cfg.gain_cap.rule) {
    case GainCapConfig::EirpRule::kWorstCase:
      cap.g_eirp = g_eirp_worst_case(psi, cfg.gain_cap.p_cell_max, cfg.rho);
      break;
    case GainCapConfig::EirpRule::kQuantile: {
      cap.g_eirp = g_eirp_quantile(psi, cfg.gain_cap.alpha, cfg.gain_cap.p_cell_max, cfg.rho);
      std::vector<double> sorted = psi;
      std::sort(sorted.begin(), sorted.end());
      auto index = static_cast<std::size_t>(std::ceil((1.0 - cfg.gain_cap.alpha) * static_cast<double>(sorted.size())));
      index = std::clamp<std::size_t>(index, 1, sorted.size());
      cap.quantile_value = sorted[index - 1];
      break;
    }
    case GainCapConfig::EirpRule::kCantelli: {
      cap.g_eirp = g_eirp_cantelli(psi, cfg.gain_cap.alpha, cfg.gain_cap.p_cell_max, cfg.rho);
      const double mu = pairwise_sum(psi) / static_cast<double>(psi.size());
      std::vector<double> sq;
      sq.reserve(psi.size());
      for (double v : psi) sq.push_back((v - mu) * (v - mu));
      cap.mu_max = mu;
      cap.sigma_max = std::sqrt(pairwise_sum(sq) / static_cast<double>(psi.size() - 1));
      break;
    }
  }
  cap.g_max = g_max(cap.g_stab, cap.g_eirp);
  return cap;
}

}  // namespace actris::gaincap
