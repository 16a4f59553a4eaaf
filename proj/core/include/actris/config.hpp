// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace actris {

/// Rician parameters of one block-fading link.
struct LinkParams {
  double k = 6.0;     // LoS-to-scattered power ratio, >= 0
  double beta = 1.0;  // large-scale loss factor, > 0
};

/// Amplifier-noise covariance model: Sigma_a(g) = Sigma_min + g^2 * Sigma_ex.
struct AmpNoiseModel {
  enum class Kind { kIid, kDiagonal, kCorrelated };
  Kind kind = Kind::kIid;
  // iid
  double sigma_min_sq = 0.05;
  double eta = 0.02;
  // diagonal (per-element variances)
  Eigen::VectorXd sigma_min_diag;
  Eigen::VectorXd eta_diag;
  // correlated (real symmetric PSD)
  Eigen::MatrixXd sigma_min_full;
  Eigen::MatrixXd eta_full;
};

/// Deterministic LoS responses for all links.
struct LosConfig {
  enum class Kind { kOnes, kSteering, kExplicit };
  Kind kind = Kind::kSteering;
  // steering: broadside desired link plus one azimuth per interferer, radians
  double desired_angle = 0.0;
  std::vector<double> interferer_angles;
  // explicit matrices
  Eigen::MatrixXcd direct, sat_ris, ris_rx;
  std::vector<Eigen::MatrixXcd> intf_direct, intf_sat_ris;
};

/// Admissible-gain computation settings.
struct GainCapConfig {
  enum class EirpRule { kWorstCase, kQuantile, kCantelli };
  double mu_safety = 0.9;  // stability safety factor, in (0,1)
  double mag = 4.0;        // maximum available gain of a cell, > 0
  EirpRule rule = EirpRule::kWorstCase;
  double alpha = 0.05;       // EIRP outage level for quantile/Cantelli rules
  double p_cell_max = 100.0;  // per-cell emission limit, > 0
};

/// Immutable experiment description: geometry, powers, noise, fading and the
/// fixed precoders/combiner. Loaded from a versioned JSON file with strict
/// (unknown keys rejected) schema; see docs/formats in the README.
struct ScenarioConfig {
  int n = 16;   // RIS elements
  int m = 0;    // cochannel interferers
  int n_t = 4;  // transmit antennas
  int n_r = 4;  // receive antennas

  double p_d = 1.0;           // desired transmit power (linear)
  std::vector<double> p_m;    // interferer powers, length m
  double n_0 = 1.0;           // receiver noise variance
  double rho = 0.9;           // passive retention, in (0,1]

  AmpNoiseModel amp_noise;

  LinkParams direct, sat_ris, ris_rx;
  std::vector<LinkParams> intf_direct, intf_sat_ris;  // length m

  Eigen::VectorXcd f;                 // desired precoder, length n_t
  std::vector<Eigen::VectorXcd> f_m;  // interferer precoders
  Eigen::VectorXcd w;                 // receive combiner, length n_r

  LosConfig los;
  GainCapConfig gain_cap;

  /// All-defaults config for a given size (Ka-band style normalized setup:
  /// rho=0.9, P_d=P_m=1, N_0=1, sigma_min^2=0.05, eta=0.02, K=6, beta=1,
  /// 4x4 antennas, uniform unit-norm precoders/combiner, steered LoS).
  static ScenarioConfig defaults(int n, int m);

  /// Throws std::domain_error / std::invalid_argument on violated invariants
  /// (nonpositive powers, rho outside (0,1], inconsistent dimensions,
  /// non-PSD covariances, zero combiner).
  void validate() const;

  double w_norm_sq() const { return w.squaredNorm(); }
};

/// Free-space loss factor (4*pi*s/lambda)^-2.
double free_space_beta(double distance, double wavelength);

/// Default steering azimuth of interferer m (alternating spread, radians).
double default_interferer_angle(int m);

/// Copy of `base` resized to (n, m) for sweep cells: per-interferer lists are
/// truncated or padded with the base defaults. Requires the iid amplifier
/// noise model and a non-explicit LoS spec (their shapes are size-bound).
ScenarioConfig resized_config(const ScenarioConfig& base, int n, int m);

/// Parses a config from JSON text. Unknown keys are errors.
ScenarioConfig parse_config(const std::string& json_text);

/// Loads and parses a config file.
ScenarioConfig load_config(const std::string& path);

/// Canonical JSON snapshot of a fully resolved config. Parsing the snapshot
/// yields an identical config; equal configs produce identical snapshots.
std::string canonical_config_json(const ScenarioConfig& cfg);

/// FNV-1a hash of the canonical snapshot.
std::uint64_t config_hash(const ScenarioConfig& cfg);

}  // namespace actris
