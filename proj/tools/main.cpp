// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "actris/common.hpp"
#include "actris/version.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace actris;

  CLI::App app{"actris - reliability-targeting design toolkit for active-RIS-assisted satellite downlinks"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "worker thread cap (default: ACTRIS_THREADS or hardware)");

  cli::SimulateOptions sim;
  auto* c_sim = app.add_subcommand("simulate", "draw a seeded scenario set and persist its coefficients");
  c_sim->add_option("--config", sim.config_path, "config JSON file")->required()->check(CLI::ExistingFile);
  c_sim->add_option("--seed", sim.seed, "master seed")->required();
  c_sim->add_option("--samples", sim.samples, "number of realizations")->required()->check(CLI::PositiveNumber);
  c_sim->add_option("--out", sim.out_path, "output scenario file")->required();

  cli::DesignOptions des;
  auto* c_des = app.add_subcommand("design", "solve the chance-constrained max-SINR design on a scenario set");
  c_des->add_option("--scenario", des.scenario_path, "scenario file from simulate")->required()->check(CLI::ExistingFile);
  c_des->add_option("--epsilon", des.epsilon, "outage level in (0,1)")->capture_default_str();
  c_des->add_option("--oracle", des.oracle, "feasibility oracle: exact | local_search | external")->capture_default_str();
  c_des->add_option("--eps-tau", des.eps_tau, "bisection tolerance (linear SINR units)")->capture_default_str();
  c_des->add_flag("--refine-gain,!--no-refine-gain", des.refine, "1-D gain refinement at fixed b*")->capture_default_str();
  c_des->add_option("--solution", des.solution_path, "externally solved (y,g,v) assignment file (external oracle)");
  c_des->add_option("--tau", des.external_tau, "threshold the external solution was solved at");
  c_des->add_option("--enum-cap", des.n_enum_cap, "exact-oracle enumeration cap on N")->capture_default_str();
  c_des->add_option("--restarts", des.restarts, "local-search restarts")->capture_default_str();
  c_des->add_option("--search-seed", des.search_seed, "local-search seed")->capture_default_str();
  c_des->add_option("--eirp-rule", des.eirp_rule, "override EIRP rule: worst_case | quantile | cantelli");
  c_des->add_option("--eirp-alpha", des.eirp_alpha, "override EIRP outage level");
  c_des->add_option("--g-max", des.g_max_override, "override the admissible gain cap");
  c_des->add_option("--out", des.out_path, "output design summary file")->required();

  cli::SweepOptions swp;
  auto* c_swp = app.add_subcommand("sweep", "grid sweeps emitting long-format tables");
  c_swp->add_option("--config", swp.config_path, "config JSON file")->required()->check(CLI::ExistingFile);
  c_swp->add_option("--seed", swp.seed, "master seed")->required();
  c_swp->add_option("--samples", swp.samples, "realizations per cell")->capture_default_str()->check(CLI::PositiveNumber);
  c_swp->add_option("--table", swp.table, "quantile_vs_m | tau_vs_g | tau_surface | envelope_vs_g")->required();
  c_swp->add_option("--n-axis", swp.n_axis, "RIS sizes")->delimiter(',');
  c_swp->add_option("--m-axis", swp.m_axis, "interferer counts")->delimiter(',');
  c_swp->add_option("--gains", swp.gains, "fixed gain panels")->delimiter(',');
  c_swp->add_option("--g-grid", swp.g_grid, "grid points on [0, g_max]")->capture_default_str();
  c_swp->add_option("--epsilon", swp.epsilon, "outage level")->capture_default_str();
  c_swp->add_option("--sample-index", swp.sample_index, "realization used by envelope_vs_g")->capture_default_str();
  c_swp->add_option("--enum-cap", swp.n_enum_cap, "exact enumeration cap on N")->capture_default_str();
  c_swp->add_option("--restarts", swp.restarts, "local-search restarts above the cap")->capture_default_str();
  c_swp->add_option("--search-seed", swp.search_seed, "local-search seed")->capture_default_str();
  c_swp->add_option("--out", swp.out_path, "output TSV table")->required();

  cli::ValidateOptions val;
  auto* c_val = app.add_subcommand("validate", "out-of-sample Monte Carlo certification of a design");
  c_val->add_option("--design", val.design_path, "design summary file")->required()->check(CLI::ExistingFile);
  c_val->add_option("--config", val.config_path, "config JSON file (must match the design)")->required()->check(CLI::ExistingFile);
  c_val->add_option("--scenario", val.scenario_path, "training scenario file for the budget re-check")->check(CLI::ExistingFile);
  c_val->add_option("--seed", val.seed, "test master seed (must differ from training)")->required();
  c_val->add_option("--samples", val.s_test, "test sample count (default 10x training)");
  c_val->add_option("--out", val.out_path, "output validation report")->required();

  cli::ExportModelOptions exp;
  auto* c_exp = app.add_subcommand("export-model", "assemble and export the lifted feasibility model");
  c_exp->add_option("--scenario", exp.scenario_path, "scenario file")->required()->check(CLI::ExistingFile);
  c_exp->add_option("--tau", exp.tau, "SINR threshold")->required();
  c_exp->add_option("--epsilon", exp.epsilon, "outage level")->capture_default_str();
  c_exp->add_option("--g-max", exp.g_max, "gain cap (default: from the configured rule)");
  c_exp->add_option("--format", exp.format, "ir | cbf")->capture_default_str();
  c_exp->add_option("--density", exp.density, "dense | sparse")->capture_default_str();
  c_exp->add_option("--eta-m", exp.eta_m, "Big-M headroom factor")->capture_default_str();
  c_exp->add_option("--out", exp.out_path, "output model file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_sim) {
      sim.threads = threads;
      cli::cmd_simulate(sim);
    } else if (*c_des) {
      des.threads = threads;
      cli::cmd_design(des);
    } else if (*c_swp) {
      swp.threads = threads;
      cli::cmd_sweep(swp);
    } else if (*c_val) {
      val.threads = threads;
      cli::cmd_validate(val);
    } else if (*c_exp) {
      exp.threads = threads;
      cli::cmd_export_model(exp);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "actris: %s\n", e.what());
    return 1;
  }
  return 0;
}
