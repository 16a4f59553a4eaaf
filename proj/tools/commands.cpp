// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "actris/bounds.hpp"
#include "actris/channel.hpp"
#include "actris/common.hpp"
#include "actris/manifest.hpp"
#include "actris/model_io.hpp"
#include "actris/saa.hpp"
#include "actris/scenario_io.hpp"
#include "json.hpp"

namespace actris::cli {

namespace {

using nlohmann::json;

double to_db(double linear) {
  return linear > 0.0 ? 10.0 * std::log10(linear) : -std::numeric_limits<double>::infinity();
}

std::string db_str(double linear) {
  return linear > 0.0 ? format_double(to_db(linear)) : "-inf";
}

class StageClock {
 public:
  explicit StageClock(RunManifest& manifest) : manifest_(manifest) { last_ = std::chrono::steady_clock::now(); }
  void lap(const std::string& stage) {
    const auto now = std::chrono::steady_clock::now();
    manifest_.wall_clock_seconds[stage] = std::chrono::duration<double>(now - last_).count();
    last_ = now;
  }

 private:
  RunManifest& manifest_;
  std::chrono::steady_clock::time_point last_;
};

json gaincap_json(const gaincap::GainCap& cap) {
  json out;
  out["g_stab"] = cap.g_stab;
  out["g_eirp"] = std::isfinite(cap.g_eirp) ? json(cap.g_eirp) : json(kUnboundedTag);
  out["g_max"] = std::isfinite(cap.g_max) ? json(cap.g_max) : json(kUnboundedTag);
  const char* rule = "worst_case";
  if (cap.rule == GainCapConfig::EirpRule::kQuantile) rule = "quantile";
  if (cap.rule == GainCapConfig::EirpRule::kCantelli) rule = "cantelli";
  out["rule"] = rule;
  out["diagnostics"] = {{"sample_count", cap.sample_count},
                        {"psi_max_overall", cap.psi_max_overall},
                        {"mu_max", cap.mu_max},
                        {"sigma_max", cap.sigma_max},
                        {"quantile_value", cap.quantile_value}};
  return out;
}

gaincap::GainCap gaincap_from_json(const json& j) {
  gaincap::GainCap cap;
  cap.g_stab = j.at("g_stab").get<double>();
  auto cap_value = [](const json& v) {
    return v.is_string() ? std::numeric_limits<double>::infinity() : v.get<double>();
  };
  cap.g_eirp = cap_value(j.at("g_eirp"));
  cap.g_max = cap_value(j.at("g_max"));
  const std::string rule = j.at("rule").get<std::string>();
  if (rule == "quantile") cap.rule = GainCapConfig::EirpRule::kQuantile;
  if (rule == "cantelli") cap.rule = GainCapConfig::EirpRule::kCantelli;
  const json& d = j.at("diagnostics");
  cap.sample_count = d.at("sample_count").get<int>();
  cap.psi_max_overall = d.at("psi_max_overall").get<double>();
  cap.mu_max = d.at("mu_max").get<double>();
  cap.sigma_max = d.at("sigma_max").get<double>();
  cap.quantile_value = d.at("quantile_value").get<double>();
  return cap;
}

std::vector<sinr::SinrCoefficients> coefficients_of(const ScenarioSet& set) {
  std::vector<sinr::SinrCoefficients> out;
  out.reserve(set.samples.size());
  for (const auto& s : set.samples) out.push_back(channel::make_sinr_coefficients(s, set.cfg));
  return out;
}

GainCapConfig effective_gain_cap_config(const ScenarioConfig& cfg, const std::string& rule_override,
                                        double alpha_override) {
  GainCapConfig gc = cfg.gain_cap;
  if (!rule_override.empty()) {
    if (rule_override == "worst_case") {
      gc.rule = GainCapConfig::EirpRule::kWorstCase;
    } else if (rule_override == "quantile") {
      gc.rule = GainCapConfig::EirpRule::kQuantile;
    } else if (rule_override == "cantelli") {
      gc.rule = GainCapConfig::EirpRule::kCantelli;
    } else {
      throw std::invalid_argument("unknown EIRP rule '" + rule_override + "'");
    }
  }
  if (alpha_override > 0) gc.alpha = alpha_override;
  return gc;
}

void write_table(const std::string& path, const std::string& table, const std::string& manifest_hash,
                 const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  out << "# actris sweep table=" << table << " manifest_hash=" << manifest_hash << "\n";
  out << "# units: *_linear columns are linear power ratios, *_db columns are 10*log10 of the same\n";
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "\t" : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
    out << "\n";
  }
  atomic_write_file(path, out.str());
}

}  // namespace

std::string design_file_text(const solve::Design& design, const gaincap::GainCap& cap,
                             const std::string& manifest_hash) {
  json root;
  root["kind"] = "actris-design";
  root["format_version"] = 1;
  root["manifest_hash"] = manifest_hash;

  json b = json::array();
  for (Eigen::Index i = 0; i < design.b.size(); ++i) b.push_back(design.b[i] > 0 ? 1 : -1);
  root["design"] = {{"b", b},
                    {"g", design.g},
                    {"tau", design.tau},
                    {"tau_db", db_str(design.tau)},
                    {"oracle", solve::oracle_name(design.oracle)},
                    {"violated_on_train", design.violated_on_train}};
  root["gain_cap"] = gaincap_json(cap);
  root["provenance"] = {{"config_hash", design.config_hash_hex},
                        {"scenario_hash", design.scenario_hash_hex},
                        {"seed", std::to_string(design.seed)},
                        {"epsilon", design.epsilon},
                        {"samples", design.s_count},
                        {"kappa", design.kappa},
                        {"eps_tau", design.eps_tau},
                        {"iterations", design.iterations},
                        {"expansions", design.expansions}};
  const int n = static_cast<int>(design.b.size());
  const int s = design.s_count;
  root["model_stats"] = {{"binaries", n + s},
                         {"continuous", 2 * n * n + 2 * n + 2},
                         {"linear_rows", 8 * n * n + 8 * n + s + 1},
                         {"soc", 1},
                         {"density", "dense"}};
  return root.dump(2);
}

DesignFile load_design_file(const std::string& path) {
  json root;
  try {
    root = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw IoError("design file is not valid JSON: " + std::string(e.what()));
  }
  if (root.value("kind", "") != "actris-design") throw IoError("not an actris design file: " + path);

  DesignFile out;
  const json& d = root.at("design");
  const json& b = d.at("b");
  out.design.b.resize(static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) {
    out.design.b[static_cast<Eigen::Index>(i)] = b[i].get<int>() > 0 ? 1.0 : -1.0;
  }
  out.design.g = d.at("g").get<double>();
  out.design.tau = d.at("tau").get<double>();
  out.design.oracle = solve::oracle_from_name(d.at("oracle").get<std::string>());
  out.design.violated_on_train = d.at("violated_on_train").get<int>();

  const json& p = root.at("provenance");
  out.design.config_hash_hex = p.at("config_hash").get<std::string>();
  out.design.scenario_hash_hex = p.at("scenario_hash").get<std::string>();
  out.design.seed = std::stoull(p.at("seed").get<std::string>());
  out.design.epsilon = p.at("epsilon").get<double>();
  out.design.s_count = p.at("samples").get<int>();
  out.design.kappa = p.at("kappa").get<int>();
  out.design.eps_tau = p.at("eps_tau").get<double>();
  out.design.iterations = p.at("iterations").get<int>();
  out.design.expansions = p.at("expansions").get<int>();

  out.cap = gaincap_from_json(root.at("gain_cap"));
  return out;
}

void cmd_simulate(const SimulateOptions& opt) {
  if (opt.samples < 1) throw std::invalid_argument("simulate: sample count must be >= 1");
  const ScenarioConfig cfg = load_config(opt.config_path);

  RunManifest manifest;
  manifest.subcommand = "simulate";
  manifest.params = {{"samples", std::to_string(opt.samples)}};
  manifest.config_snapshot_json = canonical_config_json(cfg);
  manifest.seed = opt.seed;
  StageClock clock(manifest);

  const auto samples = channel::draw_samples(cfg, opt.seed, opt.samples, opt.threads, /*keep_raw=*/false);
  clock.lap("sample");
  write_scenario_file(opt.out_path, cfg, opt.seed, samples);
  clock.lap("write");

  manifest.artifacts["scenario"] = opt.out_path;
  write_manifest_file(opt.out_path + ".manifest.json", manifest);
}

void cmd_design(const DesignOptions& opt) {
  const ScenarioSet set = load_scenario_file(opt.scenario_path);
  const auto coeffs = coefficients_of(set);
  const int s_count = static_cast<int>(coeffs.size());
  const int kappa = static_cast<int>(std::floor(opt.epsilon * s_count));

  RunManifest manifest;
  manifest.subcommand = "design";
  manifest.params = {{"epsilon", format_double(opt.epsilon)},
                     {"oracle", opt.oracle},
                     {"eps_tau", format_double(opt.eps_tau)},
                     {"refine", opt.refine ? "1" : "0"},
                     {"scenario_hash", set.content_hash_hex}};
  manifest.config_snapshot_json = canonical_config_json(set.cfg);
  manifest.seed = set.master_seed;
  StageClock clock(manifest);

  // Admissible gain range.
  ScenarioConfig cap_cfg = set.cfg;
  cap_cfg.gain_cap = effective_gain_cap_config(set.cfg, opt.eirp_rule, opt.eirp_alpha);
  gaincap::GainCap cap = gaincap::compute_gain_cap(cap_cfg, set.samples);
  double g_max = cap.g_max;
  if (opt.g_max_override > 0) {
    g_max = opt.g_max_override;
    cap.g_max = g_max;
  }
  if (!std::isfinite(g_max) || g_max <= 0) {
    throw std::invalid_argument("design: admissible gain range is degenerate (g_max <= 0 or unbounded)");
  }
  clock.lap("gain_cap");

  const solve::OracleKind kind = solve::oracle_from_name(opt.oracle);
  solve::Design design;
  if (kind == solve::OracleKind::kExternal) {
    if (opt.solution_path.empty() || opt.external_tau < 0) {
      throw std::invalid_argument(
          "design: the external oracle verifies a solved model; pass --solution <file> and --tau <value> "
          "(export the model first with export-model)");
    }
    const auto sol = saa::read_solution_file(opt.solution_path, set.cfg.n, s_count);
    const auto point = solve::ingest_external_solution(coeffs, opt.external_tau, kappa, g_max, sol);
    if (!point) {
      throw std::runtime_error("design: external solution fails the violation budget or the gain cap");
    }
    design.b = point->b;
    design.g = point->g;
    design.tau = opt.external_tau;
    design.epsilon = opt.epsilon;
    design.s_count = s_count;
    design.kappa = kappa;
    design.eps_tau = opt.eps_tau;
  } else {
    solve::FeasibilityOracle oracle;
    if (kind == solve::OracleKind::kExact) {
      solve::ExactOptions exact{opt.n_enum_cap, opt.threads};
      oracle = [&coeffs, kappa, g_max, exact](double tau) {
        return solve::check_feasible_exact(coeffs, tau, kappa, g_max, exact);
      };
    } else {
      solve::LocalSearchOptions local{opt.restarts, opt.search_seed};
      oracle = [&coeffs, kappa, g_max, local](double tau) {
        return solve::check_feasible_local(coeffs, tau, kappa, g_max, local);
      };
    }
    solve::BisectOptions bis;
    bis.eps_tau = opt.eps_tau;
    design = solve::bisect_tau(oracle, coeffs, opt.epsilon, g_max, bis);
    if (opt.refine) {
      design.g = solve::refine_gain(coeffs, design.b, design.tau, kappa, opt.epsilon, g_max, design.g);
      design.violated_on_train = solve::count_budget_violations(coeffs, design.b, design.g, design.tau);
    }
  }
  design.oracle = kind;
  design.config_hash_hex = hash_hex(config_hash(set.cfg));
  design.scenario_hash_hex = set.content_hash_hex;
  design.seed = set.master_seed;
  clock.lap("solve");

  // Contract echo: the summary is written only for a verified design.
  const int recheck = validate::count_violations(coeffs, design.b, design.g, design.tau);
  if (recheck > kappa) {
    throw std::runtime_error("design: returned design fails re-verification (" + std::to_string(recheck) +
                             " violations > kappa=" + std::to_string(kappa) + ")");
  }
  design.violated_on_train = recheck;

  atomic_write_file(opt.out_path, design_file_text(design, cap, manifest.hash_hex()));
  clock.lap("write");
  manifest.artifacts["design"] = opt.out_path;
  write_manifest_file(opt.out_path + ".manifest.json", manifest);
}

void cmd_validate(const ValidateOptions& opt) {
  const DesignFile df = load_design_file(opt.design_path);
  const ScenarioConfig cfg = load_config(opt.config_path);
  if (hash_hex(config_hash(cfg)) != df.design.config_hash_hex) {
    throw std::invalid_argument("validate: config hash does not match the design's training config");
  }
  validate::require_distinct_seed(df.design.seed, opt.seed);
  const int s_test = opt.s_test > 0 ? opt.s_test : 10 * df.design.s_count;
  if (s_test < 1) throw std::invalid_argument("validate: test sample count must be >= 1");

  RunManifest manifest;
  manifest.subcommand = "validate";
  manifest.params = {{"s_test", std::to_string(s_test)},
                     {"train_scenario_hash", df.design.scenario_hash_hex}};
  manifest.config_snapshot_json = canonical_config_json(cfg);
  manifest.seed = opt.seed;
  StageClock clock(manifest);

  const auto samples = channel::draw_samples(cfg, opt.seed, s_test, opt.threads, /*keep_raw=*/false);
  std::vector<sinr::SinrCoefficients> test_coeffs;
  test_coeffs.reserve(samples.size());
  for (const auto& s : samples) test_coeffs.push_back(channel::make_sinr_coefficients(s, cfg));
  clock.lap("sample");

  validate::ValidationReport report = validate::make_report(df.design, test_coeffs, df.design.epsilon, opt.seed);

  if (!opt.scenario_path.empty()) {
    const ScenarioSet train = load_scenario_file(opt.scenario_path);
    if (train.content_hash_hex != df.design.scenario_hash_hex) {
      throw std::invalid_argument("validate: scenario file does not match the design's training set");
    }
    report.violated_on_train =
        validate::count_violations(coefficients_of(train), df.design.b, df.design.g, df.design.tau);
  }
  clock.lap("evaluate");

  json root;
  root["kind"] = "actris-validation";
  root["format_version"] = 1;
  root["manifest_hash"] = manifest.hash_hex();
  root["p_succ_hat"] = report.p_succ_hat;
  root["ci95"] = {{"lo", report.ci95.lo}, {"hi", report.ci95.hi}};
  root["sinr"] = {{"mean_linear", report.stats.mean},
                  {"mean_db", db_str(report.stats.mean)},
                  {"variance_linear", report.stats.variance},
                  {"quantile_linear", report.stats.quantile},
                  {"quantile_db", db_str(report.stats.quantile)}};
  root["ceiling_gap"] = {{"mean", report.ceiling.mean},
                         {"min", report.ceiling.min},
                         {"max", report.ceiling.max},
                         {"counted", report.ceiling.counted},
                         {"excluded", report.ceiling.excluded}};
  root["s_test"] = report.s_test;
  root["test_seed"] = std::to_string(report.test_seed);
  root["train_seed"] = std::to_string(df.design.seed);
  root["tau"] = df.design.tau;
  if (report.violated_on_train >= 0) root["violated_on_train"] = report.violated_on_train;

  atomic_write_file(opt.out_path, root.dump(2));
  clock.lap("write");
  manifest.artifacts["report"] = opt.out_path;
  write_manifest_file(opt.out_path + ".manifest.json", manifest);
}

void cmd_export_model(const ExportModelOptions& opt) {
  const ScenarioSet set = load_scenario_file(opt.scenario_path);
  if (opt.tau < 0) throw std::invalid_argument("export-model: tau must be >= 0");

  RunManifest manifest;
  manifest.subcommand = "export-model";
  manifest.params = {{"tau", format_double(opt.tau)},
                     {"epsilon", format_double(opt.epsilon)},
                     {"format", opt.format},
                     {"density", opt.density},
                     {"scenario_hash", set.content_hash_hex}};
  manifest.config_snapshot_json = canonical_config_json(set.cfg);
  manifest.seed = set.master_seed;
  StageClock clock(manifest);

  double g_max = opt.g_max;
  if (g_max <= 0) {
    g_max = gaincap::compute_gain_cap(set.cfg, set.samples).g_max;
    if (!std::isfinite(g_max) || g_max <= 0) {
      throw std::invalid_argument("export-model: gain cap is degenerate; pass --g-max explicitly");
    }
  }

  std::vector<saa::SaaCoefficients> coeffs;
  coeffs.reserve(set.samples.size());
  for (const auto& s : set.samples) coeffs.push_back(saa::per_sample_coefficients(s, set.cfg));
  clock.lap("coefficients");

  saa::BuildOptions build;
  build.dense = (opt.density != "sparse");
  build.eta_m = opt.eta_m;
  build.threads = opt.threads;
  const saa::LiftedModel model = saa::build_feasibility_model(coeffs, opt.tau, opt.epsilon, g_max, build);
  clock.lap("build");

  saa::write_model_file(model, opt.format, opt.out_path);
  clock.lap("write");
  manifest.artifacts["model"] = opt.out_path;
  write_manifest_file(opt.out_path + ".manifest.json", manifest);
}

void cmd_sweep(const SweepOptions& opt) {
  const ScenarioConfig base = load_config(opt.config_path);
  if (opt.samples < 1) throw std::invalid_argument("sweep: sample count must be >= 1");

  RunManifest manifest;
  manifest.subcommand = "sweep";
  manifest.params = {{"table", opt.table},
                     {"samples", std::to_string(opt.samples)},
                     {"epsilon", format_double(opt.epsilon)},
                     {"g_grid", std::to_string(opt.g_grid)}};
  manifest.config_snapshot_json = canonical_config_json(base);
  manifest.seed = opt.seed;
  StageClock clock(manifest);

  const std::vector<int> n_axis = opt.n_axis.empty() ? std::vector<int>{base.n} : opt.n_axis;
  const std::vector<int> m_axis = opt.m_axis.empty() ? std::vector<int>{base.m} : opt.m_axis;
  const std::vector<double> gains = opt.gains.empty() ? std::vector<double>{0.0, 0.5, 1.0, 2.0} : opt.gains;
  if (n_axis.empty() || m_axis.empty() || gains.empty()) throw std::invalid_argument("sweep: empty axes");

  auto cell_coeffs = [&](int n, int m) {
    const ScenarioConfig cfg = resized_config(base, n, m);
    const auto samples = channel::draw_samples(cfg, opt.seed, opt.samples, opt.threads, /*keep_raw=*/false);
    std::vector<sinr::SinrCoefficients> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(channel::make_sinr_coefficients(s, cfg));
    return out;
  };
  const int kappa = static_cast<int>(std::floor(opt.epsilon * opt.samples));
  solve::ExactOptions exact{opt.n_enum_cap, opt.threads};
  solve::LocalSearchOptions local{opt.restarts, opt.search_seed};

  auto best_quantile = [&](const std::vector<sinr::SinrCoefficients>& coeffs, double g) {
    return coeffs.front().n() <= opt.n_enum_cap
               ? solve::max_quantile_at_gain(coeffs, g, opt.epsilon, exact)
               : solve::max_quantile_at_gain_local(coeffs, g, opt.epsilon, local);
  };
  auto best_tau = [&](const std::vector<sinr::SinrCoefficients>& coeffs, double g) {
    return coeffs.front().n() <= opt.n_enum_cap ? solve::max_tau_at_gain(coeffs, g, kappa, exact)
                                                : solve::max_tau_at_gain_local(coeffs, g, kappa, local);
  };

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header;

  if (opt.table == "quantile_vs_m" || opt.table == "tau_surface") {
    const bool quantile_table = opt.table == "quantile_vs_m";
    header = {"n", "m", "g", quantile_table ? "quantile_linear" : "tau_linear",
              quantile_table ? "quantile_db" : "tau_db"};
    for (int n : n_axis) {
      for (int m : m_axis) {
        const auto coeffs = cell_coeffs(n, m);
        for (double g : gains) {
          const auto cell = quantile_table ? best_quantile(coeffs, g) : best_tau(coeffs, g);
          rows.push_back({std::to_string(n), std::to_string(m), format_double(g),
                          format_double(cell.value), db_str(cell.value)});
        }
      }
    }
  } else if (opt.table == "tau_vs_g") {
    header = {"n", "m", "g", "tau_linear", "tau_db"};
    for (int n : n_axis) {
      for (int m : m_axis) {
        const ScenarioConfig cfg = resized_config(base, n, m);
        const auto samples = channel::draw_samples(cfg, opt.seed, opt.samples, opt.threads, false);
        std::vector<sinr::SinrCoefficients> coeffs;
        coeffs.reserve(samples.size());
        for (const auto& s : samples) coeffs.push_back(channel::make_sinr_coefficients(s, cfg));
        const double g_max = gaincap::compute_gain_cap(cfg, samples).g_max;
        if (!std::isfinite(g_max) || g_max <= 0) throw std::runtime_error("sweep: degenerate gain cap");
        const int points = std::max(opt.g_grid, 2);
        for (int k = 0; k < points; ++k) {
          const double g = g_max * static_cast<double>(k) / (points - 1);
          const auto cell = best_tau(coeffs, g);
          rows.push_back({std::to_string(n), std::to_string(m), format_double(g),
                          format_double(cell.value), db_str(cell.value)});
        }
      }
    }
  } else if (opt.table == "envelope_vs_g") {
    header = {"g", "lb_linear", "best_b_linear", "ub_linear", "lb_db", "best_b_db", "ub_db"};
    const auto samples = channel::draw_samples(base, opt.seed, opt.samples, opt.threads, false);
    if (opt.sample_index < 0 || opt.sample_index >= static_cast<int>(samples.size())) {
      throw std::invalid_argument("sweep: sample index out of range");
    }
    const sinr::SinrCoefficients cs =
        channel::make_sinr_coefficients(samples[static_cast<std::size_t>(opt.sample_index)], base);
    const std::vector<sinr::SinrCoefficients> one = {cs};
    const bounds::EnvelopeTerms terms = bounds::envelope_terms(cs);
    const double g_max = gaincap::compute_gain_cap(base, samples).g_max;
    const int points = std::max(opt.g_grid, 2);
    for (int k = 0; k < points; ++k) {
      const double g = g_max * static_cast<double>(k) / (points - 1);
      const bounds::Envelope env = bounds::sinr_envelopes(cs, terms, g);
      // best over b of this realization's SINR at fixed g: the kappa=0 order
      // statistic over a single sample is the sample itself.
      const auto best = base.n <= opt.n_enum_cap ? solve::max_tau_at_gain(one, g, 0, exact)
                                                 : solve::max_tau_at_gain_local(one, g, 0, local);
      const std::string ub_str = env.ub_unbounded ? kUnboundedTag : format_double(env.ub);
      const std::string ub_db = env.ub_unbounded ? kUnboundedTag : db_str(env.ub);
      rows.push_back({format_double(g), format_double(env.lb), format_double(best.value), ub_str,
                      db_str(env.lb), db_str(best.value), ub_db});
    }
  } else {
    throw std::invalid_argument("sweep: unknown table '" + opt.table +
                                "' (expected quantile_vs_m, tau_vs_g, tau_surface or envelope_vs_g)");
  }
  clock.lap("sweep");

  write_table(opt.out_path, opt.table, manifest.hash_hex(), header, rows);
  clock.lap("write");
  manifest.artifacts["table"] = opt.out_path;
  write_manifest_file(opt.out_path + ".manifest.json", manifest);
}

}  // namespace actris::cli
