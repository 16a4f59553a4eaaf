// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "actris/channel.hpp"
#include "actris/config.hpp"

namespace actris::gaincap {

/// Admissible amplification range and how it was obtained. g_eirp (and hence
/// g_max) may be +inf in memory when the EIRP limit never binds; serializers
/// must emit the tagged "unbounded" value instead.
struct GainCap {
  double g_stab = 0.0;
  double g_eirp = 0.0;
  double g_max = 0.0;
  GainCapConfig::EirpRule rule = GainCapConfig::EirpRule::kWorstCase;
  // diagnostics
  int sample_count = 0;
  double psi_max_overall = 0.0;
  double mu_max = 0.0;
  double sigma_max = 0.0;
  double quantile_value = 0.0;
};

/// Stability cap mu * MAG; mu must lie in (0,1).
double g_stab(double mu_safety, double mag);

/// Worst-cell incident power per sample.
std::vector<double> psi_max_per_sample(const std::vector<channel::ScenarioSample>& samples);

/// Scenario-robust bound sqrt(P_cell_max) / (rho sqrt(max_s psi_max)).
double g_eirp_worst_case(const std::vector<double>& psi_max, double p_cell_max, double rho);

/// Quantile bound with q_{1-alpha} the ascending order statistic at 1-based
/// index ceil((1-alpha) S).
double g_eirp_quantile(const std::vector<double>& psi_max, double alpha, double p_cell_max, double rho);

/// Moment bound sqrt(P_cell_max) / (rho sqrt(mu + c_alpha sigma)) with
/// c_alpha = sqrt((1-alpha)/alpha) and the S-1 standard deviation.
double g_eirp_cantelli(const std::vector<double>& psi_max, double alpha, double p_cell_max, double rho);

/// min(g_stab, g_eirp); an unbounded side defers to the other.
double g_max(double stab, double eirp);

/// Applies the configured rule to a drawn sample set.
GainCap compute_gain_cap(const ScenarioConfig& cfg, const std::vector<channel::ScenarioSample>& samples);

}  // namespace actris::gaincap
