// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>

#include "actris/channel.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace actris;
using namespace actris::testing;
using Cx = std::complex<double>;

TEST_CASE("rician_matrix zero scaling and domain errors") {
  Philox rng(1, 0, 0);
  const Eigen::MatrixXcd los = Eigen::MatrixXcd::Ones(3, 2);
  const Eigen::MatrixXcd h = channel::rician_matrix(3, 2, 5.0, 0.0, los, rng);
  CHECK(h.norm() == 0.0);

  Philox rng2(1, 0, 0);
  CHECK_THROWS_AS(channel::rician_matrix(3, 2, -1.0, 1.0, los, rng2), std::domain_error);
  CHECK_THROWS_AS(channel::rician_matrix(3, 2, 1.0, -1.0, los, rng2), std::domain_error);
  CHECK_THROWS_AS(channel::rician_matrix(4, 2, 1.0, 1.0, los, rng2), std::invalid_argument);
}

TEST_CASE("rician_matrix K=0 ignores the LoS response and has unit variance") {
  Philox rng_a(7, 0, 0);
  Philox rng_b(7, 0, 0);
  const Eigen::MatrixXcd los_a = Eigen::MatrixXcd::Ones(2, 2);
  const Eigen::MatrixXcd los_b = 3.0 * Eigen::MatrixXcd::Identity(2, 2);
  const auto h_a = channel::rician_matrix(2, 2, 0.0, 1.0, los_a, rng_a);
  const auto h_b = channel::rician_matrix(2, 2, 0.0, 1.0, los_b, rng_b);
  CHECK((h_a - h_b).norm() == 0.0);

  // per-entry sample variance over 1e5 i.i.d. entries
  Philox rng(8, 0, 0);
  const auto big = channel::rician_matrix(250, 400, 0.0, 1.0, Eigen::MatrixXcd::Zero(250, 400), rng);
  const double var = big.cwiseAbs2().mean();
  CHECK(var > 0.98);
  CHECK(var < 1.02);
}

TEST_CASE("rician_matrix strong-K limit collapses to the LoS response") {
  Philox rng(9, 0, 0);
  const int rows = 100, cols = 100;
  Eigen::MatrixXcd los(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) los(i, j) = std::polar(1.0, 0.01 * (i + 2 * j));
  const auto h = channel::rician_matrix(rows, cols, 1e6, 1.0, los, rng);
  const double rms = std::sqrt((h - los).cwiseAbs2().mean());
  CHECK(rms <= 2e-3);
}

TEST_CASE("variance calibration at K=0, beta=1") {
  // E|h|^2 = 1; Var(|h|^2) = 1, so three standard errors at 1e5 draws is
  // 3/sqrt(1e5) ~ 9.5e-3.
  Philox rng(10, 0, 0);
  const auto big = channel::rician_matrix(400, 250, 0.0, 1.0, Eigen::MatrixXcd::Zero(400, 250), rng);
  CHECK(std::abs(big.cwiseAbs2().mean() - 1.0) < 3.0 / std::sqrt(1e5));
}

TEST_CASE("cascade_coefficients basis extraction and zero factor") {
  Eigen::MatrixXcd h_d(2, 2);
  h_d << Cx(1.5, -0.5), Cx(2, 0), Cx(0, 1), Cx(3, 3);
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(2);
  w[0] = 1.0;
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(2);
  f[0] = 1.0;
  const Eigen::MatrixXcd g_t = Eigen::MatrixXcd::Random(3, 2);
  const Eigen::MatrixXcd h_r = Eigen::MatrixXcd::Zero(2, 3);
  const auto [d, u] = channel::cascade_coefficients(w, f, h_d, g_t, h_r);
  CHECK(d == h_d(0, 0));
  CHECK(u.norm() == 0.0);
}

TEST_CASE("cascade_coefficients matches a straight-loop computation") {
  Philox rng(11, 0, 0);
  const int n_r = 2, n_t = 2, n = 3;
  auto draw = [&](int r, int c) {
    Eigen::MatrixXcd m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = rng.next_cnormal();
    return m;
  };
  const Eigen::MatrixXcd h_d = draw(n_r, n_t), g_t = draw(n, n_t), h_r = draw(n_r, n);
  const Eigen::VectorXcd w = draw(n_r, 1), f = draw(n_t, 1);

  const auto [d, u] = channel::cascade_coefficients(w, f, h_d, g_t, h_r);

  std::complex<double> d_ref = 0.0;
  for (int i = 0; i < n_r; ++i)
    for (int j = 0; j < n_t; ++j) d_ref += std::conj(w[i]) * h_d(i, j) * f[j];
  CHECK(std::abs(d - d_ref) < 1e-12);

  for (int i = 0; i < n; ++i) {
    std::complex<double> rx = 0.0, tx = 0.0;
    for (int k = 0; k < n_r; ++k) rx += std::conj(w[k]) * h_r(k, i);
    for (int k = 0; k < n_t; ++k) tx += g_t(i, k) * f[k];
    CHECK(std::abs(u[i] - rx * tx) < 1e-12);
  }
}

TEST_CASE("phase_align hand cases and the quadratic-form identity") {
  {
    Eigen::VectorXcd u(1);
    u[0] = 0.5;
    const auto pa = channel::phase_align(1.0, u);
    CHECK(pa.abs_d == 1.0);
    CHECK(pa.r[0] == 0.5);
    CHECK(pa.c[0] == 0.0);
    CHECK(dense_q(pa.r, pa.c)(0, 0) == doctest::Approx(0.25));
  }
  {
    Eigen::VectorXcd u(1);
    u[0] = Cx(0, 1);
    const auto pa = channel::phase_align(Cx(0, 1), u);
    CHECK(pa.abs_d == doctest::Approx(1.0));
    CHECK(pa.r[0] == doctest::Approx(1.0));
    CHECK(pa.c[0] == doctest::Approx(0.0));
  }
  {
    // d = 0 keeps utilde = u
    Eigen::VectorXcd u(2);
    u << Cx(1, 2), Cx(-0.5, 0.25);
    const auto pa = channel::phase_align(0.0, u);
    CHECK(pa.abs_d == 0.0);
    CHECK(pa.r[0] == 1.0);
    CHECK(pa.c[0] == 2.0);
  }

  // b' Q b = |utilde' b|^2 for random b
  Philox rng(12, 0, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5;
    Eigen::VectorXcd u(n);
    for (int i = 0; i < n; ++i) u[i] = rng.next_cnormal();
    const std::complex<double> d = rng.next_cnormal();
    const auto pa = channel::phase_align(d, u);
    const Eigen::MatrixXd q = dense_q(pa.r, pa.c);
    const Eigen::VectorXcd utilde = u * std::polar(1.0, -std::arg(d));
    for (int k = 0; k < 100; ++k) {
      const Eigen::VectorXd b = random_b(n, rng);
      const double quad = b.dot(q * b);
      const double mag = std::norm(utilde.cwiseProduct(b.cast<std::complex<double>>()).sum());
      CHECK(quad == doctest::Approx(mag).epsilon(1e-12));
    }
  }
}

TEST_CASE("sample_scenario determinism, empty interference, zero link") {
  const ScenarioConfig cfg = ScenarioConfig::defaults(4, 0);
  const auto s1 = channel::sample_scenario(cfg, 5, 3);
  const auto s2 = channel::sample_scenario(cfg, 5, 3);
  CHECK(s1.desired.abs_d == s2.desired.abs_d);
  CHECK((s1.desired.r - s2.desired.r).norm() == 0.0);
  CHECK(s1.l == s2.l);
  CHECK((s1.psi - s2.psi).norm() == 0.0);
  CHECK(s1.interferers.empty());

  // psi with M=0 is P_d |g_t,i' f|^2
  const auto& raw = s1.raw.value();
  const Eigen::VectorXd psi_ref = cfg.p_d * (raw.g_t * cfg.f).cwiseAbs2();
  CHECK((s1.psi - psi_ref).norm() == 0.0);

  ScenarioConfig dead = ScenarioConfig::defaults(4, 0);
  dead.ris_rx.beta = 0.0;
  const auto s3 = channel::sample_scenario(dead, 5, 0);
  CHECK(s3.l == 0.0);
  CHECK(s3.desired.r.norm() == 0.0);
  CHECK(s3.desired.c.norm() == 0.0);
}

TEST_CASE("draw_samples is identical across thread counts") {
  const ScenarioConfig cfg = ScenarioConfig::defaults(6, 2);
  const auto a = channel::draw_samples(cfg, 99, 12, 1);
  const auto b = channel::draw_samples(cfg, 99, 12, 3);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].desired.abs_d == b[i].desired.abs_d);
    CHECK((a[i].desired.r - b[i].desired.r).norm() == 0.0);
    CHECK(a[i].d0 == b[i].d0);
    CHECK((a[i].psi - b[i].psi).norm() == 0.0);
  }
}

TEST_CASE("quadratic-form SINR equals the raw-channel SINR") {
  Philox rng(13, 0, 0);
  int checked = 0;
  for (int nm = 0; nm < 3; ++nm) {
    const int n = nm == 0 ? 3 : (nm == 1 ? 8 : 16);
    const int m = nm == 1 ? 2 : nm;
    const ScenarioConfig cfg = ScenarioConfig::defaults(n, m);
    const auto samples = channel::draw_samples(cfg, 21 + nm, 20, 1, /*keep_raw=*/true);
    for (const auto& s : samples) {
      const auto coeffs = channel::make_sinr_coefficients(s, cfg);
      for (int k = 0; k < 20; ++k) {
        const Eigen::VectorXd b = random_b(n, rng);
        const double g = 3.0 * rng.next_closed_open();
        const double lhs = sinr::evaluate_sinr(coeffs, b, g);
        const double rhs = raw_channel_sinr(s, cfg, b, g);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        ++checked;
      }
    }
  }
  CHECK(checked >= 1000);
}
