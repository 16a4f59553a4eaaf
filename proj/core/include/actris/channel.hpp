// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "actris/config.hpp"
#include "actris/rng.hpp"
#include "actris/sinr.hpp"

namespace actris::channel {

/// Phase-aligned cascade coefficients of one satellite:
/// utilde = u e^{-j arg(d)} = r + j c, so the quadratic form
/// Q = Re{utilde utilde^H} = r r' + c c' is carried by its rank-2 factors.
struct PhaseAligned {
  double abs_d = 0.0;
  Eigen::VectorXd r, c;
};

/// Raw channel draws of one realization (kept for oracle-style checks; the
/// scenario file persists only the derived coefficients).
struct RawChannels {
  Eigen::MatrixXcd h_d, g_t, h_r;
  std::vector<Eigen::MatrixXcd> h_dm, g_tm;
  std::complex<double> d;
  Eigen::VectorXcd u;
  std::vector<std::complex<double>> d_m;
  std::vector<Eigen::VectorXcd> u_m;
};

/// One block-fading realization reduced to the coefficients the rest of the
/// pipeline consumes.
struct ScenarioSample {
  std::uint32_t index = 0;
  std::uint64_t seed = 0;

  PhaseAligned desired;
  std::vector<PhaseAligned> interferers;

  double l = 0.0;        // ||H_r^H w||^2
  double d0 = 0.0;       // N_0 ||w||^2 + baseline folded amplifier noise
  double d1 = 0.0;       // gain-dependent folded amplifier noise
  Eigen::VectorXd psi;   // per-element incident power

  std::optional<RawChannels> raw;
};

/// Uniform linear array steering vector, entries exp(j pi k sin(angle)).
Eigen::VectorXcd steering_vector(int len, double angle);

/// Deterministic LoS responses for every link of the scenario.
struct LosMatrices {
  Eigen::MatrixXcd direct, sat_ris, ris_rx;
  std::vector<Eigen::MatrixXcd> intf_direct, intf_sat_ris;
};
LosMatrices los_matrices(const ScenarioConfig& cfg);

/// One Rician block-fading draw:
///   sqrt(beta) (sqrt(K/(K+1)) H_los + sqrt(1/(K+1)) H_nlos)
/// with i.i.d. unit-variance circularly-symmetric Gaussian NLoS entries drawn
/// row-major from rng. Throws std::domain_error for negative K or beta and
/// std::invalid_argument on LoS shape mismatch.
Eigen::MatrixXcd rician_matrix(int rows, int cols, double k, double beta,
                               const Eigen::MatrixXcd& h_los, Philox& rng);

/// Cascaded scalar/vector coefficients d = w^H H_d f and
/// u_i = (w^H h_{r,i}) (g_{t,i}' f).
std::pair<std::complex<double>, Eigen::VectorXcd> cascade_coefficients(
    const Eigen::VectorXcd& w, const Eigen::VectorXcd& f, const Eigen::MatrixXcd& h_d,
    const Eigen::MatrixXcd& g_t, const Eigen::MatrixXcd& h_r);

/// Phase rotation by e^{-j arg(d)}; arg(0) is taken as 0 so the function is
/// total (then utilde = u and abs_d = 0).
PhaseAligned phase_align(std::complex<double> d, const Eigen::VectorXcd& u);

/// Draws all links of realization `sample_index` from the substream family of
/// `seed` and reduces them. keep_raw controls whether the raw matrices stay
/// attached.
ScenarioSample sample_scenario(const ScenarioConfig& cfg, std::uint64_t seed,
                               std::uint32_t sample_index, bool keep_raw = true);

/// Draws `count` samples (indices 0..count-1) in parallel.
std::vector<ScenarioSample> draw_samples(const ScenarioConfig& cfg, std::uint64_t seed, int count,
                                         int threads = 0, bool keep_raw = true);

/// Assembles the per-sample SINR coefficients.
sinr::SinrCoefficients make_sinr_coefficients(const ScenarioSample& sample, const ScenarioConfig& cfg);

}  // namespace actris::channel
