// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "actris/saa.hpp"

namespace actris::saa {

/// Self-describing text IR of a LiftedModel (versioned header, deterministic
/// variable and row ordering, %.17g doubles). export -> import -> export is
/// byte-identical.
std::string export_model_ir(const LiftedModel& model);
LiftedModel import_model_ir(const std::string& text);

/// Conic benchmark text export for external mixed-integer conic solvers.
/// Variable boxes become explicit nonnegative rows (the format carries no
/// bound section), so its row count exceeds the model's linear_row_count.
std::string export_model_cbf(const LiftedModel& model);

/// Writes the model in the requested format ("ir" or "cbf").
void write_model_file(const LiftedModel& model, const std::string& format, const std::string& path);

/// (y, g, v) assignment parsed from an external solver's output: one
/// "name value" pair per line, '#' comments ignored. Lifted auxiliaries
/// (t, u, z, s, Z) are accepted and skipped; binaries are rounded within 1e-4.
struct ExternalSolution {
  Eigen::VectorXd y;
  double g = 0.0;
  std::vector<bool> violated;
};

ExternalSolution read_solution_file(const std::string& path, int n, int s_count);

}  // namespace actris::saa
