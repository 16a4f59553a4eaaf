// SPDX-License-Identifier: Apache-2.0
#include "actris/sinr.hpp"

#include <stdexcept>

namespace actris::sinr {

namespace {

void require_psd(const Eigen::MatrixXd& a, const char* what) {
  if (a.rows() != a.cols()) throw std::domain_error(std::string(what) + ": covariance must be square");
  if (!a.isApprox(a.transpose(), 1e-12)) throw std::domain_error(std::string(what) + ": covariance must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (es.eigenvalues().minCoeff() < -1e-10 * scale) {
    throw std::domain_error(std::string(what) + ": covariance is not positive semidefinite");
  }
}

double folded_form(const Eigen::VectorXcd& proj, const Eigen::MatrixXd& sigma) {
  // w^H H_r Sigma H_r^H w = proj^H Sigma proj with proj = H_r^H w; real for
  // symmetric Sigma.
  return (proj.adjoint() * sigma * proj)(0, 0).real();
}

}  // namespace

FoldedNoise folded_noise_variance(const Eigen::MatrixXcd& h_r, const Eigen::VectorXcd& w,
                                  const AmpNoiseModel& model) {
  if (h_r.rows() != w.size()) throw std::invalid_argument("folded_noise_variance: H_r rows must match combiner length");
  const Eigen::VectorXcd proj = h_r.adjoint() * w;
  FoldedNoise out;
  switch (model.kind) {
    case AmpNoiseModel::Kind::kIid: {
      const double l = proj.squaredNorm();
      out.d0_ra = model.sigma_min_sq * l;
      out.d1_ra = model.eta * l;
      break;
    }
    case AmpNoiseModel::Kind::kDiagonal: {
      if (model.sigma_min_diag.size() != h_r.cols() || model.eta_diag.size() != h_r.cols()) {
        throw std::invalid_argument("folded_noise_variance: diagonal entries must match RIS size");
      }
      if (model.sigma_min_diag.minCoeff() < 0 || model.eta_diag.minCoeff() < 0) {
        throw std::domain_error("folded_noise_variance: negative diagonal variance");
      }
      const Eigen::VectorXd mag = proj.cwiseAbs2();
      out.d0_ra = model.sigma_min_diag.dot(mag);
      out.d1_ra = model.eta_diag.dot(mag);
      break;
    }
    case AmpNoiseModel::Kind::kCorrelated: {
      require_psd(model.sigma_min_full, "folded_noise_variance sigma_min");
      require_psd(model.eta_full, "folded_noise_variance sigma_ex");
      out.d0_ra = folded_form(proj, model.sigma_min_full);
      out.d1_ra = folded_form(proj, model.eta_full);
      break;
    }
  }
  return out;
}

std::pair<double, double> ritz_bounds(const Eigen::MatrixXcd& h_r, const Eigen::VectorXcd& w,
                                      const Eigen::MatrixXd& sigma) {
  require_psd(sigma, "ritz_bounds");
  const double l = (h_r.adjoint() * w).squaredNorm();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().minCoeff() * l, es.eigenvalues().maxCoeff() * l};
}

ConfigTerms config_terms(const SinrCoefficients& coeffs, const Eigen::VectorXd& b) {
  if (b.size() != coeffs.r.size()) throw std::invalid_argument("config_terms: b length mismatch");
  ConfigTerms t;
  const double br = coeffs.r.dot(b);
  const double bc = coeffs.c.dot(b);
  t.b_lin = 2.0 * coeffs.rho * coeffs.abs_d * br;
  t.c_quad = coeffs.rho * coeffs.rho * (br * br + bc * bc);
  const int m = coeffs.m();
  t.b_lin_m.resize(static_cast<std::size_t>(m));
  t.c_quad_m.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double brm = coeffs.r_m[idx].dot(b);
    const double bcm = coeffs.c_m[idx].dot(b);
    t.b_lin_m[idx] = 2.0 * coeffs.rho * coeffs.abs_dm[idx] * brm;
    t.c_quad_m[idx] = coeffs.rho * coeffs.rho * (brm * brm + bcm * bcm);
  }
  return t;
}

double evaluate_sinr(const SinrCoefficients& coeffs, const ConfigTerms& terms, double g) {
  const double g2 = g * g;
  const double num = coeffs.p_d * (coeffs.a + g * terms.b_lin + g2 * terms.c_quad);
  double den = coeffs.d0 + g2 * coeffs.d1;
  for (int i = 0; i < coeffs.m(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    den += coeffs.p_m[idx] * (coeffs.a_m[idx] + g * terms.b_lin_m[idx] + g2 * terms.c_quad_m[idx]);
  }
  return num / den;
}

double evaluate_sinr(const SinrCoefficients& coeffs, const Eigen::VectorXd& b, double g) {
  return evaluate_sinr(coeffs, config_terms(coeffs, b), g);
}

}  // namespace actris::sinr
