// SPDX-License-Identifier: Apache-2.0
#include "actris/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "actris/common.hpp"
#include "json.hpp"

namespace actris {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& ctx) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw ConfigError("unknown key '" + it.key() + "' in " + ctx);
    }
  }
}

double get_number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number()) throw ConfigError(std::string("key '") + key + "' must be a number");
  return obj.at(key).get<double>();
}

int get_int(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number_integer()) throw ConfigError(std::string("key '") + key + "' must be an integer");
  return obj.at(key).get<int>();
}

std::complex<double> parse_complex(const json& v, const std::string& ctx) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError("expected [re, im] pair in " + ctx);
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

Eigen::VectorXcd parse_cvector(const json& v, const std::string& ctx) {
  if (!v.is_array()) throw ConfigError("expected array of [re, im] pairs in " + ctx);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = parse_complex(v[i], ctx);
  return out;
}

Eigen::MatrixXcd parse_cmatrix(const json& v, const std::string& ctx) {
  if (!v.is_array() || v.empty()) throw ConfigError("expected nonempty matrix in " + ctx);
  const std::size_t rows = v.size();
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != cols) throw ConfigError("ragged matrix in " + ctx);
    for (std::size_t j = 0; j < cols; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parse_complex(v[i][j], ctx);
    }
  }
  return out;
}

Eigen::MatrixXd parse_rmatrix(const json& v, const std::string& ctx) {
  if (!v.is_array() || v.empty()) throw ConfigError("expected nonempty matrix in " + ctx);
  const std::size_t rows = v.size();
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != cols) throw ConfigError("ragged matrix in " + ctx);
    for (std::size_t j = 0; j < cols; ++j) {
      if (!v[i][j].is_number()) throw ConfigError("non-numeric entry in " + ctx);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[i][j].get<double>();
    }
  }
  return out;
}

Eigen::VectorXd parse_rvector(const json& v, const std::string& ctx) {
  if (!v.is_array()) throw ConfigError("expected numeric array in " + ctx);
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError("non-numeric entry in " + ctx);
    out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
  }
  return out;
}

double parse_beta(const json& v, const std::string& ctx) {
  if (v.is_number()) return v.get<double>();
  if (v.is_object()) {
    check_keys(v, {"distance", "wavelength"}, ctx);
    if (!v.contains("distance") || !v.contains("wavelength")) {
      throw ConfigError("path loss object needs both 'distance' and 'wavelength' in " + ctx);
    }
    return free_space_beta(v.at("distance").get<double>(), v.at("wavelength").get<double>());
  }
  throw ConfigError("path loss must be a number or {distance, wavelength} in " + ctx);
}

LinkParams parse_link(const json& v, LinkParams base, const std::string& ctx) {
  check_keys(v, {"k", "beta"}, ctx);
  if (v.contains("k")) base.k = v.at("k").get<double>();
  if (v.contains("beta")) base.beta = parse_beta(v.at("beta"), ctx);
  return base;
}

Eigen::VectorXcd uniform_unit(int len) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(len);
  return v / std::sqrt(static_cast<double>(len));
}

void require_psd(const Eigen::MatrixXd& a, const std::string& ctx) {
  if (a.rows() != a.cols()) throw std::domain_error(ctx + ": covariance must be square");
  if (!a.isApprox(a.transpose(), 1e-12)) throw std::domain_error(ctx + ": covariance must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (es.eigenvalues().minCoeff() < -1e-10 * scale) {
    throw std::domain_error(ctx + ": covariance is not positive semidefinite");
  }
}

json cvector_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v[i].real(), v[i].imag()});
  return out;
}

json cmatrix_json(const Eigen::MatrixXcd& a) {
  json out = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back({a(i, j).real(), a(i, j).imag()});
    out.push_back(row);
  }
  return out;
}

json rmatrix_json(const Eigen::MatrixXd& a) {
  json out = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    out.push_back(row);
  }
  return out;
}

json link_json(const LinkParams& l) { return json{{"k", l.k}, {"beta", l.beta}}; }

}  // namespace

double free_space_beta(double distance, double wavelength) {
  if (distance <= 0 || wavelength <= 0) throw std::domain_error("free_space_beta: distance and wavelength must be positive");
  const double x = 4.0 * kPi * distance / wavelength;
  return 1.0 / (x * x);
}

double default_interferer_angle(int m) {
  const double deg = (m % 2 == 0 ? 1.0 : -1.0) * (20.0 + 12.0 * m);
  return deg * kPi / 180.0;
}

ScenarioConfig resized_config(const ScenarioConfig& base, int n, int m) {
  if (base.amp_noise.kind != AmpNoiseModel::Kind::kIid) {
    throw std::invalid_argument("resized_config: sweep axes require the iid amplifier noise model");
  }
  if (base.los.kind == LosConfig::Kind::kExplicit) {
    throw std::invalid_argument("resized_config: sweep axes cannot resize explicit LoS matrices");
  }
  ScenarioConfig cfg = base;
  cfg.n = n;
  cfg.m = m;
  const std::size_t mm = static_cast<std::size_t>(m);
  const double pad_power = base.p_m.empty() ? base.p_d : base.p_m.back();
  const LinkParams pad_direct = base.intf_direct.empty() ? base.direct : base.intf_direct.back();
  const LinkParams pad_sat_ris = base.intf_sat_ris.empty() ? base.sat_ris : base.intf_sat_ris.back();
  const Eigen::VectorXcd pad_precoder = base.f_m.empty() ? base.f : base.f_m.back();

  cfg.p_m.resize(mm, pad_power);
  cfg.intf_direct.resize(mm, pad_direct);
  cfg.intf_sat_ris.resize(mm, pad_sat_ris);
  cfg.f_m.resize(mm, pad_precoder);
  const std::size_t have = std::min(base.los.interferer_angles.size(), mm);
  cfg.los.interferer_angles.resize(mm);
  for (std::size_t i = have; i < mm; ++i) {
    cfg.los.interferer_angles[i] = default_interferer_angle(static_cast<int>(i));
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig ScenarioConfig::defaults(int n, int m) {
  ScenarioConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.p_m.assign(static_cast<std::size_t>(m), cfg.p_d);
  cfg.intf_direct.assign(static_cast<std::size_t>(m), LinkParams{});
  cfg.intf_sat_ris.assign(static_cast<std::size_t>(m), LinkParams{});
  cfg.f = uniform_unit(cfg.n_t);
  cfg.w = uniform_unit(cfg.n_r);
  cfg.f_m.assign(static_cast<std::size_t>(m), uniform_unit(cfg.n_t));
  cfg.los.kind = LosConfig::Kind::kSteering;
  cfg.los.desired_angle = 0.0;
  cfg.los.interferer_angles.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) cfg.los.interferer_angles[static_cast<std::size_t>(i)] = default_interferer_angle(i);
  cfg.validate();
  return cfg;
}

void ScenarioConfig::validate() const {
  if (n < 1) throw std::domain_error("config: ris_elements must be >= 1");
  if (m < 0) throw std::domain_error("config: interferers must be >= 0");
  if (n_t < 1 || n_r < 1) throw std::domain_error("config: antenna counts must be >= 1");
  if (!(p_d > 0)) throw std::domain_error("config: desired_power must be > 0");
  if (static_cast<int>(p_m.size()) != m) throw std::invalid_argument("config: interferer_powers length must equal interferers");
  for (double p : p_m) {
    if (!(p >= 0)) throw std::domain_error("config: interferer powers must be >= 0");
  }
  if (!(n_0 > 0)) throw std::domain_error("config: noise_variance must be > 0");
  if (!(rho > 0 && rho <= 1)) throw std::domain_error("config: passive_retention must lie in (0, 1]");

  auto check_link = [](const LinkParams& l, const std::string& name) {
    if (!(l.k >= 0) || !std::isfinite(l.k)) throw std::domain_error("config: K of link " + name + " must be finite and >= 0");
    if (!(l.beta >= 0)) throw std::domain_error("config: beta of link " + name + " must be >= 0");
  };
  check_link(direct, "direct");
  check_link(sat_ris, "sat_ris");
  check_link(ris_rx, "ris_rx");
  if (static_cast<int>(intf_direct.size()) != m || static_cast<int>(intf_sat_ris.size()) != m) {
    throw std::invalid_argument("config: per-interferer link parameter lists must have length interferers");
  }
  for (int i = 0; i < m; ++i) {
    check_link(intf_direct[static_cast<std::size_t>(i)], "interferer_direct[" + std::to_string(i) + "]");
    check_link(intf_sat_ris[static_cast<std::size_t>(i)], "interferer_sat_ris[" + std::to_string(i) + "]");
  }

  if (f.size() != n_t) throw std::invalid_argument("config: precoder length must equal tx_antennas");
  if (w.size() != n_r) throw std::invalid_argument("config: combiner length must equal rx_antennas");
  if (!(w.norm() > 0)) throw std::domain_error("config: combiner must be nonzero");
  if (static_cast<int>(f_m.size()) != m) throw std::invalid_argument("config: interferer precoder count must equal interferers");
  for (const auto& fm : f_m) {
    if (fm.size() != n_t) throw std::invalid_argument("config: interferer precoder length must equal tx_antennas");
  }

  switch (amp_noise.kind) {
    case AmpNoiseModel::Kind::kIid:
      if (!(amp_noise.sigma_min_sq >= 0)) throw std::domain_error("config: sigma_min_sq must be >= 0");
      if (!(amp_noise.eta >= 0)) throw std::domain_error("config: eta must be >= 0");
      break;
    case AmpNoiseModel::Kind::kDiagonal:
      if (amp_noise.sigma_min_diag.size() != n || amp_noise.eta_diag.size() != n) {
        throw std::invalid_argument("config: diagonal amp noise vectors must have length ris_elements");
      }
      if (amp_noise.sigma_min_diag.minCoeff() < 0 || amp_noise.eta_diag.minCoeff() < 0) {
        throw std::domain_error("config: diagonal amp noise entries must be >= 0");
      }
      break;
    case AmpNoiseModel::Kind::kCorrelated:
      if (amp_noise.sigma_min_full.rows() != n || amp_noise.eta_full.rows() != n) {
        throw std::invalid_argument("config: correlated amp noise matrices must be ris_elements square");
      }
      require_psd(amp_noise.sigma_min_full, "config amp_noise sigma_min");
      require_psd(amp_noise.eta_full, "config amp_noise sigma_ex");
      break;
  }

  switch (los.kind) {
    case LosConfig::Kind::kOnes:
      break;
    case LosConfig::Kind::kSteering:
      if (static_cast<int>(los.interferer_angles.size()) != m) {
        throw std::invalid_argument("config: interferer_angles length must equal interferers");
      }
      break;
    case LosConfig::Kind::kExplicit: {
      auto shape = [](const Eigen::MatrixXcd& a, int r, int c, const std::string& name) {
        if (a.rows() != r || a.cols() != c) throw std::invalid_argument("config: LoS matrix " + name + " has wrong shape");
      };
      shape(los.direct, n_r, n_t, "direct");
      shape(los.sat_ris, n, n_t, "sat_ris");
      shape(los.ris_rx, n_r, n, "ris_rx");
      if (static_cast<int>(los.intf_direct.size()) != m || static_cast<int>(los.intf_sat_ris.size()) != m) {
        throw std::invalid_argument("config: explicit interferer LoS lists must have length interferers");
      }
      for (int i = 0; i < m; ++i) {
        shape(los.intf_direct[static_cast<std::size_t>(i)], n_r, n_t, "interferer_direct");
        shape(los.intf_sat_ris[static_cast<std::size_t>(i)], n, n_t, "interferer_sat_ris");
      }
      break;
    }
  }

  if (!(gain_cap.mu_safety > 0 && gain_cap.mu_safety < 1)) throw std::domain_error("config: mu_safety must lie in (0, 1)");
  if (!(gain_cap.mag > 0)) throw std::domain_error("config: mag must be > 0");
  if (!(gain_cap.alpha > 0 && gain_cap.alpha < 1)) throw std::domain_error("config: eirp_alpha must lie in (0, 1)");
  if (!(gain_cap.p_cell_max > 0)) throw std::domain_error("config: p_cell_max must be > 0");
}

ScenarioConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");
  check_keys(root,
             {"schema_version", "ris_elements", "interferers", "tx_antennas", "rx_antennas",
              "desired_power", "interferer_powers", "noise_variance", "passive_retention",
              "amp_noise", "rician_k", "path_loss", "links", "los", "precoder",
              "interferer_precoders", "combiner", "gain_cap"},
             "config root");
  if (!root.contains("schema_version")) throw ConfigError("config: missing schema_version");
  if (root.at("schema_version").get<int>() != 1) throw ConfigError("config: unsupported schema_version (expected 1)");

  ScenarioConfig cfg;
  cfg.n = get_int(root, "ris_elements", 16);
  cfg.m = get_int(root, "interferers", 0);
  cfg.n_t = get_int(root, "tx_antennas", 4);
  cfg.n_r = get_int(root, "rx_antennas", 4);
  cfg.p_d = get_number(root, "desired_power", 1.0);
  cfg.n_0 = get_number(root, "noise_variance", 1.0);
  cfg.rho = get_number(root, "passive_retention", 0.9);
  if (cfg.m < 0) throw ConfigError("config: interferers must be >= 0");

  if (root.contains("interferer_powers")) {
    const json& pv = root.at("interferer_powers");
    if (pv.is_number()) {
      cfg.p_m.assign(static_cast<std::size_t>(cfg.m), pv.get<double>());
    } else if (pv.is_array()) {
      for (const auto& x : pv) cfg.p_m.push_back(x.get<double>());
    } else {
      throw ConfigError("config: interferer_powers must be a number or array");
    }
  } else {
    cfg.p_m.assign(static_cast<std::size_t>(cfg.m), cfg.p_d);
  }

  const double k_default = get_number(root, "rician_k", 6.0);
  double beta_default = 1.0;
  if (root.contains("path_loss")) beta_default = parse_beta(root.at("path_loss"), "path_loss");
  const LinkParams base{k_default, beta_default};
  cfg.direct = base;
  cfg.sat_ris = base;
  cfg.ris_rx = base;
  cfg.intf_direct.assign(static_cast<std::size_t>(cfg.m), base);
  cfg.intf_sat_ris.assign(static_cast<std::size_t>(cfg.m), base);

  if (root.contains("links")) {
    const json& lk = root.at("links");
    check_keys(lk, {"direct", "sat_ris", "ris_rx", "interferer_direct", "interferer_sat_ris"}, "links");
    if (lk.contains("direct")) cfg.direct = parse_link(lk.at("direct"), base, "links.direct");
    if (lk.contains("sat_ris")) cfg.sat_ris = parse_link(lk.at("sat_ris"), base, "links.sat_ris");
    if (lk.contains("ris_rx")) cfg.ris_rx = parse_link(lk.at("ris_rx"), base, "links.ris_rx");
    auto parse_intf = [&](const char* key, std::vector<LinkParams>& dst) {
      if (!lk.contains(key)) return;
      const json& arr = lk.at(key);
      if (!arr.is_array() || static_cast<int>(arr.size()) != cfg.m) {
        throw ConfigError(std::string("links.") + key + " must be an array of length interferers");
      }
      for (int i = 0; i < cfg.m; ++i) {
        dst[static_cast<std::size_t>(i)] = parse_link(arr[static_cast<std::size_t>(i)], base, std::string("links.") + key);
      }
    };
    parse_intf("interferer_direct", cfg.intf_direct);
    parse_intf("interferer_sat_ris", cfg.intf_sat_ris);
  }

  if (root.contains("amp_noise")) {
    const json& an = root.at("amp_noise");
    check_keys(an, {"model", "sigma_min_sq", "eta", "sigma_min", "sigma_ex"}, "amp_noise");
    const std::string model = an.value("model", "iid");
    if (model == "iid") {
      cfg.amp_noise.kind = AmpNoiseModel::Kind::kIid;
      cfg.amp_noise.sigma_min_sq = get_number(an, "sigma_min_sq", 0.05);
      cfg.amp_noise.eta = get_number(an, "eta", 0.02);
    } else if (model == "diagonal") {
      cfg.amp_noise.kind = AmpNoiseModel::Kind::kDiagonal;
      cfg.amp_noise.sigma_min_diag = parse_rvector(an.at("sigma_min_sq"), "amp_noise.sigma_min_sq");
      cfg.amp_noise.eta_diag = parse_rvector(an.at("eta"), "amp_noise.eta");
    } else if (model == "correlated") {
      cfg.amp_noise.kind = AmpNoiseModel::Kind::kCorrelated;
      cfg.amp_noise.sigma_min_full = parse_rmatrix(an.at("sigma_min"), "amp_noise.sigma_min");
      cfg.amp_noise.eta_full = parse_rmatrix(an.at("sigma_ex"), "amp_noise.sigma_ex");
    } else {
      throw ConfigError("config: amp_noise.model must be iid, diagonal or correlated");
    }
  }

  if (root.contains("precoder")) {
    const json& p = root.at("precoder");
    cfg.f = (p.is_string() && p.get<std::string>() == "uniform") ? uniform_unit(cfg.n_t)
                                                                 : parse_cvector(p, "precoder");
  } else {
    cfg.f = uniform_unit(cfg.n_t);
  }
  if (root.contains("combiner")) {
    const json& p = root.at("combiner");
    cfg.w = (p.is_string() && p.get<std::string>() == "uniform") ? uniform_unit(cfg.n_r)
                                                                 : parse_cvector(p, "combiner");
  } else {
    cfg.w = uniform_unit(cfg.n_r);
  }
  if (root.contains("interferer_precoders")) {
    const json& p = root.at("interferer_precoders");
    if (p.is_string() && p.get<std::string>() == "uniform") {
      cfg.f_m.assign(static_cast<std::size_t>(cfg.m), uniform_unit(cfg.n_t));
    } else if (p.is_array()) {
      for (const auto& v : p) cfg.f_m.push_back(parse_cvector(v, "interferer_precoders"));
    } else {
      throw ConfigError("config: interferer_precoders must be \"uniform\" or an array of vectors");
    }
  } else {
    cfg.f_m.assign(static_cast<std::size_t>(cfg.m), uniform_unit(cfg.n_t));
  }

  cfg.los.kind = LosConfig::Kind::kSteering;
  cfg.los.desired_angle = 0.0;
  cfg.los.interferer_angles.resize(static_cast<std::size_t>(cfg.m));
  for (int i = 0; i < cfg.m; ++i) cfg.los.interferer_angles[static_cast<std::size_t>(i)] = default_interferer_angle(i);
  if (root.contains("los")) {
    const json& lv = root.at("los");
    check_keys(lv,
               {"type", "desired_angle_deg", "interferer_angles_deg", "direct", "sat_ris", "ris_rx",
                "interferer_direct", "interferer_sat_ris"},
               "los");
    const std::string type = lv.value("type", "steering");
    if (type == "ones") {
      cfg.los.kind = LosConfig::Kind::kOnes;
    } else if (type == "steering") {
      cfg.los.kind = LosConfig::Kind::kSteering;
      cfg.los.desired_angle = get_number(lv, "desired_angle_deg", 0.0) * kPi / 180.0;
      if (lv.contains("interferer_angles_deg")) {
        const json& ang = lv.at("interferer_angles_deg");
        if (!ang.is_array() || static_cast<int>(ang.size()) != cfg.m) {
          throw ConfigError("config: los.interferer_angles_deg must have length interferers");
        }
        for (int i = 0; i < cfg.m; ++i) {
          cfg.los.interferer_angles[static_cast<std::size_t>(i)] = ang[static_cast<std::size_t>(i)].get<double>() * kPi / 180.0;
        }
      }
    } else if (type == "explicit") {
      cfg.los.kind = LosConfig::Kind::kExplicit;
      cfg.los.direct = parse_cmatrix(lv.at("direct"), "los.direct");
      cfg.los.sat_ris = parse_cmatrix(lv.at("sat_ris"), "los.sat_ris");
      cfg.los.ris_rx = parse_cmatrix(lv.at("ris_rx"), "los.ris_rx");
      if (cfg.m > 0) {
        for (const auto& v : lv.at("interferer_direct")) cfg.los.intf_direct.push_back(parse_cmatrix(v, "los.interferer_direct"));
        for (const auto& v : lv.at("interferer_sat_ris")) cfg.los.intf_sat_ris.push_back(parse_cmatrix(v, "los.interferer_sat_ris"));
      }
    } else {
      throw ConfigError("config: los.type must be ones, steering or explicit");
    }
  }

  if (root.contains("gain_cap")) {
    const json& gc = root.at("gain_cap");
    check_keys(gc, {"mu_safety", "mag", "eirp_rule", "eirp_alpha", "p_cell_max"}, "gain_cap");
    cfg.gain_cap.mu_safety = get_number(gc, "mu_safety", cfg.gain_cap.mu_safety);
    cfg.gain_cap.mag = get_number(gc, "mag", cfg.gain_cap.mag);
    cfg.gain_cap.alpha = get_number(gc, "eirp_alpha", cfg.gain_cap.alpha);
    cfg.gain_cap.p_cell_max = get_number(gc, "p_cell_max", cfg.gain_cap.p_cell_max);
    if (gc.contains("eirp_rule")) {
      const std::string rule = gc.at("eirp_rule").get<std::string>();
      if (rule == "worst_case") {
        cfg.gain_cap.rule = GainCapConfig::EirpRule::kWorstCase;
      } else if (rule == "quantile") {
        cfg.gain_cap.rule = GainCapConfig::EirpRule::kQuantile;
      } else if (rule == "cantelli") {
        cfg.gain_cap.rule = GainCapConfig::EirpRule::kCantelli;
      } else {
        throw ConfigError("config: gain_cap.eirp_rule must be worst_case, quantile or cantelli");
      }
    }
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  return parse_config(read_file(path));
}

std::string canonical_config_json(const ScenarioConfig& cfg) {
  json root;
  root["schema_version"] = 1;
  root["ris_elements"] = cfg.n;
  root["interferers"] = cfg.m;
  root["tx_antennas"] = cfg.n_t;
  root["rx_antennas"] = cfg.n_r;
  root["desired_power"] = cfg.p_d;
  root["interferer_powers"] = cfg.p_m;
  root["noise_variance"] = cfg.n_0;
  root["passive_retention"] = cfg.rho;

  json an;
  switch (cfg.amp_noise.kind) {
    case AmpNoiseModel::Kind::kIid:
      an = {{"model", "iid"}, {"sigma_min_sq", cfg.amp_noise.sigma_min_sq}, {"eta", cfg.amp_noise.eta}};
      break;
    case AmpNoiseModel::Kind::kDiagonal: {
      an["model"] = "diagonal";
      an["sigma_min_sq"] = std::vector<double>(cfg.amp_noise.sigma_min_diag.begin(), cfg.amp_noise.sigma_min_diag.end());
      an["eta"] = std::vector<double>(cfg.amp_noise.eta_diag.begin(), cfg.amp_noise.eta_diag.end());
      break;
    }
    case AmpNoiseModel::Kind::kCorrelated:
      an["model"] = "correlated";
      an["sigma_min"] = rmatrix_json(cfg.amp_noise.sigma_min_full);
      an["sigma_ex"] = rmatrix_json(cfg.amp_noise.eta_full);
      break;
  }
  root["amp_noise"] = an;

  json links;
  links["direct"] = link_json(cfg.direct);
  links["sat_ris"] = link_json(cfg.sat_ris);
  links["ris_rx"] = link_json(cfg.ris_rx);
  json intf_d = json::array(), intf_s = json::array();
  for (int i = 0; i < cfg.m; ++i) {
    intf_d.push_back(link_json(cfg.intf_direct[static_cast<std::size_t>(i)]));
    intf_s.push_back(link_json(cfg.intf_sat_ris[static_cast<std::size_t>(i)]));
  }
  links["interferer_direct"] = intf_d;
  links["interferer_sat_ris"] = intf_s;
  root["links"] = links;

  root["precoder"] = cvector_json(cfg.f);
  root["combiner"] = cvector_json(cfg.w);
  json fms = json::array();
  for (const auto& fm : cfg.f_m) fms.push_back(cvector_json(fm));
  root["interferer_precoders"] = fms;

  json losj;
  switch (cfg.los.kind) {
    case LosConfig::Kind::kOnes:
      losj["type"] = "ones";
      break;
    case LosConfig::Kind::kSteering: {
      losj["type"] = "steering";
      losj["desired_angle_deg"] = cfg.los.desired_angle * 180.0 / kPi;
      std::vector<double> deg;
      deg.reserve(cfg.los.interferer_angles.size());
      for (double a : cfg.los.interferer_angles) deg.push_back(a * 180.0 / kPi);
      losj["interferer_angles_deg"] = deg;
      break;
    }
    case LosConfig::Kind::kExplicit: {
      losj["type"] = "explicit";
      losj["direct"] = cmatrix_json(cfg.los.direct);
      losj["sat_ris"] = cmatrix_json(cfg.los.sat_ris);
      losj["ris_rx"] = cmatrix_json(cfg.los.ris_rx);
      json a = json::array(), b = json::array();
      for (const auto& x : cfg.los.intf_direct) a.push_back(cmatrix_json(x));
      for (const auto& x : cfg.los.intf_sat_ris) b.push_back(cmatrix_json(x));
      losj["interferer_direct"] = a;
      losj["interferer_sat_ris"] = b;
      break;
    }
  }
  root["los"] = losj;

  const char* rule = "worst_case";
  if (cfg.gain_cap.rule == GainCapConfig::EirpRule::kQuantile) rule = "quantile";
  if (cfg.gain_cap.rule == GainCapConfig::EirpRule::kCantelli) rule = "cantelli";
  root["gain_cap"] = {{"mu_safety", cfg.gain_cap.mu_safety},
                      {"mag", cfg.gain_cap.mag},
                      {"eirp_rule", rule},
                      {"eirp_alpha", cfg.gain_cap.alpha},
                      {"p_cell_max", cfg.gain_cap.p_cell_max}};

  return root.dump(2);
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
  return fnv1a64(canonical_config_json(cfg));
}

}  // namespace actris
