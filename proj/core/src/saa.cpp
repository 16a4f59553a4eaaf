// SPDX-License-Identifier: Apache-2.0
#include "actris/saa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "actris/common.hpp"

namespace actris::saa {

namespace {

// Both lifted-product shapes used by the model are w = x*y with x in [0, X]
// and y in [0, 1]; the four McCormick rows specialize accordingly.
void append_mccormick(std::vector<LinearRow>& rows, const std::string& stem, int w_idx, int x_idx,
                      double x_hi, int y_idx) {
  rows.push_back({stem + "_0", 0.0, {{w_idx, 1.0}}});
  rows.push_back({stem + "_1", x_hi, {{w_idx, 1.0}, {y_idx, -x_hi}, {x_idx, -1.0}}});
  rows.push_back({stem + "_2", 0.0, {{y_idx, x_hi}, {w_idx, -1.0}}});
  rows.push_back({stem + "_3", 0.0, {{x_idx, 1.0}, {w_idx, -1.0}}});
}

struct HalfTerms {
  double constant = 0.0;
  double g_coef = 0.0;
  double t_coef = 0.0;
  Eigen::VectorXd u_coef, z_coef;
  std::vector<std::pair<double, const Eigen::VectorXd*>> z2_factors;
};

// Numerator half P_d * T_s and denominator half D0 + D1 t + sum_m P_m T_m of
// one scenario condition, kept separate for the Big-M interval bounds.
std::pair<HalfTerms, HalfTerms> scenario_halves(const SaaCoefficients& cs) {
  const auto& k = cs.base;
  const int n = k.n();
  const double rho = k.rho;
  const double rho2 = rho * rho;

  HalfTerms num;
  num.constant = k.p_d * k.a;
  num.g_coef = -2.0 * rho * k.p_d * k.abs_d * k.r.sum();
  num.u_coef = 4.0 * rho * k.p_d * k.abs_d * k.r;
  num.t_coef = rho2 * k.p_d * cs.q0;
  num.z_coef = -4.0 * rho2 * k.p_d * cs.q;
  num.z2_factors.push_back({4.0 * rho2 * k.p_d, &k.r});
  num.z2_factors.push_back({4.0 * rho2 * k.p_d, &k.c});

  HalfTerms den;
  den.constant = k.d0;
  den.t_coef = k.d1;
  den.u_coef = Eigen::VectorXd::Zero(n);
  den.z_coef = Eigen::VectorXd::Zero(n);
  for (int m = 0; m < k.m(); ++m) {
    const auto idx = static_cast<std::size_t>(m);
    const double pm = k.p_m[idx];
    den.constant += pm * k.a_m[idx];
    den.g_coef += -2.0 * rho * pm * k.abs_dm[idx] * k.r_m[idx].sum();
    den.u_coef += 4.0 * rho * pm * k.abs_dm[idx] * k.r_m[idx];
    den.t_coef += rho2 * pm * cs.q0_m[idx];
    den.z_coef += -4.0 * rho2 * pm * cs.q_m[idx];
    den.z2_factors.push_back({4.0 * rho2 * pm, &k.r_m[idx]});
    den.z2_factors.push_back({4.0 * rho2 * pm, &k.c_m[idx]});
  }
  return {std::move(num), std::move(den)};
}

// Interval bounds of a half over the lifted box, pairing every affine
// coefficient with its variable range and taking the sign-appropriate
// endpoint. Variable coupling is ignored on purpose: conservative but valid.
std::pair<double, double> half_bounds(const HalfTerms& h, double g_max) {
  const double t_hi = g_max * g_max;
  double lo = h.constant;
  double hi = h.constant;
  auto fold = [&](double coef, double range_hi) {
    lo += std::min(0.0, coef * range_hi);
    hi += std::max(0.0, coef * range_hi);
  };
  fold(h.g_coef, g_max);
  fold(h.t_coef, t_hi);
  for (int i = 0; i < h.u_coef.size(); ++i) fold(h.u_coef[i], g_max);
  for (int i = 0; i < h.z_coef.size(); ++i) fold(h.z_coef[i], t_hi);
  const int n = static_cast<int>(h.u_coef.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double coef = 0.0;
      for (const auto& [weight, vec] : h.z2_factors) coef += weight * (*vec)[i] * (*vec)[j];
      fold(coef, t_hi);
    }
  }
  return {lo, hi};
}

}  // namespace

double ScenarioRowTerms::z2_entry(int i, int j) const {
  double coef = 0.0;
  for (const auto& [weight, vec] : z2_factors) coef += weight * (*vec)[i] * (*vec)[j];
  return coef;
}

SaaCoefficients from_sinr(const sinr::SinrCoefficients& base) {
  SaaCoefficients cs;
  cs.base = base;
  const double r1 = cs.base.r.sum();
  const double c1 = cs.base.c.sum();
  cs.q = cs.base.r * r1 + cs.base.c * c1;
  cs.q0 = r1 * r1 + c1 * c1;
  const int m = cs.base.m();
  cs.q_m.resize(static_cast<std::size_t>(m));
  cs.q0_m.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double rm1 = cs.base.r_m[idx].sum();
    const double cm1 = cs.base.c_m[idx].sum();
    cs.q_m[idx] = cs.base.r_m[idx] * rm1 + cs.base.c_m[idx] * cm1;
    cs.q0_m[idx] = rm1 * rm1 + cm1 * cm1;
  }
  return cs;
}

SaaCoefficients per_sample_coefficients(const channel::ScenarioSample& sample, const ScenarioConfig& cfg) {
  return from_sinr(channel::make_sinr_coefficients(sample, cfg));
}

ScenarioRowTerms scenario_row(const SaaCoefficients& cs, double tau) {
  if (tau < 0) throw std::domain_error("scenario_row: tau must be >= 0");
  auto [num, den] = scenario_halves(cs);
  ScenarioRowTerms row;
  row.constant = num.constant - tau * den.constant;
  row.g_coef = num.g_coef - tau * den.g_coef;
  row.t_coef = num.t_coef - tau * den.t_coef;
  row.u_coef = num.u_coef - tau * den.u_coef;
  row.z_coef = num.z_coef - tau * den.z_coef;
  row.z2_factors = std::move(num.z2_factors);
  for (auto& [weight, vec] : den.z2_factors) row.z2_factors.push_back({-tau * weight, vec});
  return row;
}

double compute_big_m(const std::vector<SaaCoefficients>& coeffs, double tau, double eta_m, double g_max) {
  double worst = 0.0;
  for (const auto& cs : coeffs) {
    const auto [num, den] = scenario_halves(cs);
    const double num_lo = half_bounds(num, g_max).first;
    const double den_hi = half_bounds(den, g_max).second;
    if (!std::isfinite(num_lo) || !std::isfinite(den_hi)) {
      throw std::domain_error("compute_big_m: non-finite coefficients");
    }
    worst = std::max(worst, tau * den_hi - num_lo);
  }
  return (1.0 + eta_m) * worst;
}

int LiftedModel::binary_count() const {
  return static_cast<int>(std::count_if(vars.begin(), vars.end(), [](const VarInfo& v) { return v.integral; }));
}

int LiftedModel::continuous_count() const {
  return static_cast<int>(vars.size()) - binary_count();
}

LiftedModel build_feasibility_model(const std::vector<SaaCoefficients>& coeffs, double tau,
                                    double epsilon, double g_max, const BuildOptions& options) {
  if (coeffs.empty()) throw std::invalid_argument("build_feasibility_model: need at least one scenario");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("build_feasibility_model: epsilon must lie in (0, 1)");
  if (!(g_max > 0.0)) throw std::domain_error("build_feasibility_model: g_max must be > 0");

  LiftedModel model;
  model.n = coeffs.front().base.n();
  model.s_count = static_cast<int>(coeffs.size());
  model.tau = tau;
  model.epsilon = epsilon;
  model.kappa = static_cast<int>(std::floor(epsilon * static_cast<double>(model.s_count)));
  model.g_max = g_max;
  model.eta_m = options.eta_m;
  model.dense = options.dense;
  model.symmetry_rows = options.symmetry_rows;
  model.big_m = compute_big_m(coeffs, tau, options.eta_m, g_max);

  const int n = model.n;
  const int s_count = model.s_count;
  const double t_hi = g_max * g_max;

  if (options.dense) {
    model.mask.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) model.mask.push_back({i, j});
    }
  } else {
    // Structural union over scenarios: a pair is kept when any quadratic-form
    // matrix has a nonzero (i,j) entry.
    Eigen::MatrixXd hit = Eigen::MatrixXd::Zero(n, n);
    for (const auto& cs : coeffs) {
      auto accumulate = [&](const Eigen::VectorXd& r, const Eigen::VectorXd& c) {
        hit += (r * r.transpose()).cwiseAbs() + (c * c.transpose()).cwiseAbs();
      };
      accumulate(cs.base.r, cs.base.c);
      for (int m = 0; m < cs.base.m(); ++m) {
        accumulate(cs.base.r_m[static_cast<std::size_t>(m)], cs.base.c_m[static_cast<std::size_t>(m)]);
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (hit(i, j) != 0.0) model.mask.push_back({i, j});
      }
    }
  }
  const int pairs = static_cast<int>(model.mask.size());

  model.vars.reserve(static_cast<std::size_t>(n + s_count + 2 + 2 * n + 2 * pairs));
  for (int i = 0; i < n; ++i) model.vars.push_back({"y[" + std::to_string(i) + "]", 0.0, 1.0, true});
  for (int s = 0; s < s_count; ++s) model.vars.push_back({"v[" + std::to_string(s) + "]", 0.0, 1.0, true});
  model.vars.push_back({"g", 0.0, g_max, false});
  model.vars.push_back({"t", 0.0, t_hi, false});
  for (int i = 0; i < n; ++i) model.vars.push_back({"u[" + std::to_string(i) + "]", 0.0, g_max, false});
  for (int i = 0; i < n; ++i) model.vars.push_back({"z[" + std::to_string(i) + "]", 0.0, t_hi, false});
  for (const auto& [i, j] : model.mask) {
    model.vars.push_back({"s[" + std::to_string(i) + "][" + std::to_string(j) + "]", 0.0, 1.0, false});
  }
  for (const auto& [i, j] : model.mask) {
    model.vars.push_back({"Z[" + std::to_string(i) + "][" + std::to_string(j) + "]", 0.0, t_hi, false});
  }

  // Scenario rows E_s + M_big v_s >= 0, materialized in parallel.
  std::vector<LinearRow> scen_rows(static_cast<std::size_t>(s_count));
  parallel_for(static_cast<std::size_t>(s_count), options.threads, [&](std::size_t s) {
    const ScenarioRowTerms terms = scenario_row(coeffs[s], tau);
    LinearRow row;
    row.name = "scen_" + std::to_string(s);
    row.constant = terms.constant;
    row.terms.reserve(static_cast<std::size_t>(2 * n + 3 + pairs));
    if (terms.g_coef != 0.0) row.terms.push_back({model.g_index(), terms.g_coef});
    if (terms.t_coef != 0.0) row.terms.push_back({model.t_index(), terms.t_coef});
    for (int i = 0; i < n; ++i) {
      if (terms.u_coef[i] != 0.0) row.terms.push_back({model.u_index(i), terms.u_coef[i]});
    }
    for (int i = 0; i < n; ++i) {
      if (terms.z_coef[i] != 0.0) row.terms.push_back({model.z_index(i), terms.z_coef[i]});
    }
    for (int p = 0; p < pairs; ++p) {
      const double coef = terms.z2_entry(model.mask[static_cast<std::size_t>(p)].first,
                                         model.mask[static_cast<std::size_t>(p)].second);
      if (coef != 0.0) row.terms.push_back({model.zz_index(p), coef});
    }
    row.terms.push_back({model.v_index(static_cast<int>(s)), model.big_m});
    scen_rows[s] = std::move(row);
  });

  model.rows.reserve(static_cast<std::size_t>(s_count + 1 + 8 * n + 8 * pairs));
  for (auto& row : scen_rows) model.rows.push_back(std::move(row));

  LinearRow budget;
  budget.name = "budget";
  budget.constant = static_cast<double>(model.kappa);
  budget.terms.reserve(static_cast<std::size_t>(s_count));
  for (int s = 0; s < s_count; ++s) budget.terms.push_back({model.v_index(s), -1.0});
  model.rows.push_back(std::move(budget));

  for (int i = 0; i < n; ++i) {
    append_mccormick(model.rows, "mc_u" + std::to_string(i), model.u_index(i), model.g_index(), g_max,
                     model.y_index(i));
  }
  for (int i = 0; i < n; ++i) {
    append_mccormick(model.rows, "mc_z" + std::to_string(i), model.z_index(i), model.t_index(), t_hi,
                     model.y_index(i));
  }
  for (int p = 0; p < pairs; ++p) {
    const auto [i, j] = model.mask[static_cast<std::size_t>(p)];
    append_mccormick(model.rows, "mc_s" + std::to_string(i) + "_" + std::to_string(j), model.s_index(p),
                     model.y_index(i), 1.0, model.y_index(j));
  }
  for (int p = 0; p < pairs; ++p) {
    const auto [i, j] = model.mask[static_cast<std::size_t>(p)];
    append_mccormick(model.rows, "mc_Z" + std::to_string(i) + "_" + std::to_string(j), model.zz_index(p),
                     model.t_index(), t_hi, model.s_index(p));
  }

  if (options.symmetry_rows) {
    for (int p = 0; p < pairs; ++p) {
      const auto [i, j] = model.mask[static_cast<std::size_t>(p)];
      if (i >= j) continue;
      const auto mirror = std::find(model.mask.begin(), model.mask.end(), std::make_pair(j, i));
      if (mirror == model.mask.end()) continue;
      const int q = static_cast<int>(mirror - model.mask.begin());
      const std::string stem = "sym_s" + std::to_string(i) + "_" + std::to_string(j);
      model.rows.push_back({stem + "_a", 0.0, {{model.s_index(p), 1.0}, {model.s_index(q), -1.0}}});
      model.rows.push_back({stem + "_b", 0.0, {{model.s_index(q), 1.0}, {model.s_index(p), -1.0}}});
    }
  }

  model.soc_g = model.g_index();
  model.soc_t = model.t_index();
  return model;
}

double row_value(const LinearRow& row, const Eigen::VectorXd& x) {
  double v = row.constant;
  for (const auto& [idx, coef] : row.terms) v += coef * x[idx];
  return v;
}

Eigen::VectorXd exact_lift(const LiftedModel& model, const Eigen::VectorXd& b, double g,
                           const std::vector<bool>& violated) {
  if (b.size() != model.n) throw std::invalid_argument("exact_lift: b length mismatch");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(model.vars.size()));
  const double t = g * g;
  for (int i = 0; i < model.n; ++i) {
    const double y = (b[i] + 1.0) / 2.0;
    x[model.y_index(i)] = y;
    x[model.u_index(i)] = g * y;
    x[model.z_index(i)] = t * y;
  }
  for (int s = 0; s < model.s_count; ++s) {
    x[model.v_index(s)] = (!violated.empty() && violated[static_cast<std::size_t>(s)]) ? 1.0 : 0.0;
  }
  x[model.g_index()] = g;
  x[model.t_index()] = t;
  for (int p = 0; p < static_cast<int>(model.mask.size()); ++p) {
    const auto [i, j] = model.mask[static_cast<std::size_t>(p)];
    const double s_ij = x[model.y_index(i)] * x[model.y_index(j)];
    x[model.s_index(p)] = s_ij;
    x[model.zz_index(p)] = t * s_ij;
  }
  return x;
}

bool soc_satisfied(const LiftedModel& model, const Eigen::VectorXd& x, double tol) {
  const double g = x[model.soc_g];
  const double t = x[model.soc_t];
  return std::hypot(2.0 * g, t - 1.0) <= t + 1.0 + tol;
}

int count_violated_rows(const LiftedModel& model, const Eigen::VectorXd& x, double tol) {
  int bad = 0;
  for (const auto& row : model.rows) {
    if (row_value(row, x) < -tol) ++bad;
  }
  if (!soc_satisfied(model, x, tol)) ++bad;
  return bad;
}

}  // namespace actris::saa
