// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "actris/gaincap.hpp"
#include "actris/solve.hpp"
#include "actris/validate.hpp"

namespace actris::cli {

struct SimulateOptions {
  std::string config_path;
  std::uint64_t seed = 1;
  int samples = 200;
  std::string out_path;
  int threads = 0;
};

struct DesignOptions {
  std::string scenario_path;
  double epsilon = 0.1;
  std::string oracle = "exact";
  double eps_tau = 1e-3;
  bool refine = true;
  std::string solution_path;  // external oracle input
  double external_tau = -1.0;
  std::string out_path;
  int n_enum_cap = 16;
  int restarts = 16;
  std::uint64_t search_seed = 1;
  int threads = 0;
  std::string eirp_rule;     // empty: from config
  double eirp_alpha = -1.0;  // <0: from config
  double g_max_override = -1.0;
};

struct SweepOptions {
  std::string config_path;
  std::uint64_t seed = 1;
  int samples = 200;
  std::string table;  // quantile_vs_m | tau_vs_g | tau_surface | envelope_vs_g
  std::vector<int> n_axis;
  std::vector<int> m_axis;
  std::vector<double> gains;
  int g_grid = 25;
  double epsilon = 0.1;
  int sample_index = 0;
  std::string out_path;
  int threads = 0;
  int n_enum_cap = 16;
  int restarts = 16;
  std::uint64_t search_seed = 1;
};

struct ValidateOptions {
  std::string design_path;
  std::string config_path;
  std::string scenario_path;  // optional: re-check the training budget
  std::uint64_t seed = 2;
  int s_test = 0;  // 0: default 10x training size
  std::string out_path;
  int threads = 0;
};

struct ExportModelOptions {
  std::string scenario_path;
  double tau = 0.0;
  double epsilon = 0.1;
  double g_max = -1.0;  // <0: derive from the configured gain cap
  std::string format = "ir";
  std::string density = "dense";
  double eta_m = 0.02;
  std::string out_path;
  int threads = 0;
};

void cmd_simulate(const SimulateOptions& opt);
void cmd_design(const DesignOptions& opt);
void cmd_sweep(const SweepOptions& opt);
void cmd_validate(const ValidateOptions& opt);
void cmd_export_model(const ExportModelOptions& opt);

/// Design summary (de)serialization shared by design/validate and tests.
struct DesignFile {
  solve::Design design;
  gaincap::GainCap cap;
};
std::string design_file_text(const solve::Design& design, const gaincap::GainCap& cap,
                             const std::string& manifest_hash);
DesignFile load_design_file(const std::string& path);

}  // namespace actris::cli
