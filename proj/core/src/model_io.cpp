// SPDX-License-Identifier: Apache-2.0
#include "actris/model_io.hpp"

#include <cmath>
#include <sstream>

#include "actris/common.hpp"

namespace actris::saa {

namespace {

const char* kIrHeader = "ACTRIS-MODEL-IR v1";

std::string ir_double(double v) { return format_double(v); }

[[noreturn]] void bad_ir(const std::string& why) {
  throw IoError("model IR parse error: " + why);
}

}  // namespace

std::string export_model_ir(const LiftedModel& model) {
  std::ostringstream out;
  out << kIrHeader << "\n";
  out << "meta n " << model.n << " s " << model.s_count << "\n";
  out << "meta tau " << ir_double(model.tau) << " epsilon " << ir_double(model.epsilon) << " kappa "
      << model.kappa << " g_max " << ir_double(model.g_max) << " big_m " << ir_double(model.big_m)
      << " eta_m " << ir_double(model.eta_m) << "\n";
  out << "meta density " << (model.dense ? "dense" : "sparse") << " symmetry "
      << (model.symmetry_rows ? 1 : 0) << "\n";
  out << "mask " << model.mask.size() << "\n";
  for (const auto& [i, j] : model.mask) out << "pair " << i << " " << j << "\n";
  out << "vars " << model.vars.size() << "\n";
  for (std::size_t k = 0; k < model.vars.size(); ++k) {
    const VarInfo& v = model.vars[k];
    out << "var " << k << " " << v.name << " " << ir_double(v.lo) << " " << ir_double(v.hi) << " "
        << (v.integral ? 'b' : 'c') << "\n";
  }
  out << "rows " << model.rows.size() << "\n";
  for (std::size_t k = 0; k < model.rows.size(); ++k) {
    const LinearRow& row = model.rows[k];
    out << "row " << k << " " << row.name << " " << ir_double(row.constant) << " " << row.terms.size();
    for (const auto& [idx, coef] : row.terms) out << " " << idx << " " << ir_double(coef);
    out << "\n";
  }
  out << "soc " << model.soc_g << " " << model.soc_t << "\n";
  out << "end\n";
  return out.str();
}

LiftedModel import_model_ir(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kIrHeader) bad_ir("missing or unsupported header");

  LiftedModel model;
  std::string tok;

  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) bad_ir(std::string("unexpected end of file before ") + what);
    return std::istringstream(line);
  };

  {
    auto ls = next_line("meta n");
    std::string m, kn, ks;
    int n = 0, s = 0;
    ls >> m >> kn >> n >> ks >> s;
    if (m != "meta" || kn != "n" || ks != "s") bad_ir("malformed size line");
    model.n = n;
    model.s_count = s;
  }
  {
    auto ls = next_line("meta tau");
    std::string m, k1, k2, k3, k4, k5, k6;
    ls >> m >> k1 >> model.tau >> k2 >> model.epsilon >> k3 >> model.kappa >> k4 >> model.g_max >> k5 >>
        model.big_m >> k6 >> model.eta_m;
    if (m != "meta" || k1 != "tau" || k6 != "eta_m") bad_ir("malformed threshold line");
  }
  {
    auto ls = next_line("meta density");
    std::string m, k1, density, k2;
    int sym = 0;
    ls >> m >> k1 >> density >> k2 >> sym;
    if (m != "meta" || k1 != "density") bad_ir("malformed density line");
    model.dense = (density == "dense");
    model.symmetry_rows = sym != 0;
  }
  {
    auto ls = next_line("mask");
    std::size_t count = 0;
    ls >> tok >> count;
    if (tok != "mask") bad_ir("malformed mask line");
    model.mask.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      auto ps = next_line("pair");
      int i = 0, j = 0;
      ps >> tok >> i >> j;
      if (tok != "pair") bad_ir("malformed pair line");
      model.mask.push_back({i, j});
    }
  }
  {
    auto ls = next_line("vars");
    std::size_t count = 0;
    ls >> tok >> count;
    if (tok != "vars") bad_ir("malformed vars line");
    model.vars.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      auto vs = next_line("var");
      std::size_t idx = 0;
      VarInfo v;
      char kind = 'c';
      vs >> tok >> idx >> v.name >> v.lo >> v.hi >> kind;
      if (tok != "var" || idx != k) bad_ir("malformed var line");
      v.integral = (kind == 'b');
      model.vars.push_back(std::move(v));
    }
  }
  {
    auto ls = next_line("rows");
    std::size_t count = 0;
    ls >> tok >> count;
    if (tok != "rows") bad_ir("malformed rows line");
    model.rows.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      auto rs = next_line("row");
      std::size_t idx = 0, nnz = 0;
      LinearRow row;
      rs >> tok >> idx >> row.name >> row.constant >> nnz;
      if (tok != "row" || idx != k) bad_ir("malformed row line");
      row.terms.reserve(nnz);
      for (std::size_t e = 0; e < nnz; ++e) {
        int var = 0;
        double coef = 0.0;
        rs >> var >> coef;
        row.terms.push_back({var, coef});
      }
      if (!rs) bad_ir("truncated row line");
      model.rows.push_back(std::move(row));
    }
  }
  {
    auto ls = next_line("soc");
    ls >> tok >> model.soc_g >> model.soc_t;
    if (tok != "soc") bad_ir("malformed soc line");
  }
  {
    auto ls = next_line("end");
    ls >> tok;
    if (tok != "end") bad_ir("missing end marker");
  }
  return model;
}

std::string export_model_cbf(const LiftedModel& model) {
  std::ostringstream out;
  const int nvars = static_cast<int>(model.vars.size());
  const int nrows = static_cast<int>(model.rows.size());
  const int nbound_rows = 2 * nvars;
  const int total_rows = nrows + nbound_rows + 3;

  out << "VER\n3\n\n";
  out << "OBJSENSE\nMIN\n\n";
  out << "VAR\n" << nvars << " 1\nF " << nvars << "\n\n";

  std::vector<int> binaries;
  for (int k = 0; k < nvars; ++k) {
    if (model.vars[static_cast<std::size_t>(k)].integral) binaries.push_back(k);
  }
  out << "INT\n" << binaries.size() << "\n";
  for (int k : binaries) out << k << "\n";
  out << "\n";

  out << "CON\n" << total_rows << " 3\n";
  out << "L+ " << nrows << "\n";
  out << "L+ " << nbound_rows << "\n";
  out << "Q 3\n\n";

  struct Entry {
    int row, col;
    double val;
  };
  std::vector<Entry> acoord;
  std::vector<std::pair<int, double>> bcoord;

  int row_id = 0;
  for (const auto& row : model.rows) {
    for (const auto& [idx, coef] : row.terms) acoord.push_back({row_id, idx, coef});
    if (row.constant != 0.0) bcoord.push_back({row_id, row.constant});
    ++row_id;
  }
  for (int k = 0; k < nvars; ++k) {
    const VarInfo& v = model.vars[static_cast<std::size_t>(k)];
    acoord.push_back({row_id, k, 1.0});
    if (v.lo != 0.0) bcoord.push_back({row_id, -v.lo});
    ++row_id;
    acoord.push_back({row_id, k, -1.0});
    bcoord.push_back({row_id, v.hi});
    ++row_id;
  }
  // (t + 1, 2 g, t - 1) in the quadratic cone enforces t >= g^2.
  acoord.push_back({row_id, model.soc_t, 1.0});
  bcoord.push_back({row_id, 1.0});
  ++row_id;
  acoord.push_back({row_id, model.soc_g, 2.0});
  ++row_id;
  acoord.push_back({row_id, model.soc_t, 1.0});
  bcoord.push_back({row_id, -1.0});

  out << "ACOORD\n" << acoord.size() << "\n";
  for (const auto& e : acoord) out << e.row << " " << e.col << " " << ir_double(e.val) << "\n";
  out << "\n";
  out << "BCOORD\n" << bcoord.size() << "\n";
  for (const auto& [r, v] : bcoord) out << r << " " << ir_double(v) << "\n";
  return out.str();
}

void write_model_file(const LiftedModel& model, const std::string& format, const std::string& path) {
  if (format == "ir") {
    atomic_write_file(path, export_model_ir(model));
  } else if (format == "cbf") {
    atomic_write_file(path, export_model_cbf(model));
  } else {
    throw std::invalid_argument("write_model_file: unsupported format '" + format + "' (expected ir or cbf)");
  }
}

ExternalSolution read_solution_file(const std::string& path, int n, int s_count) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  ExternalSolution sol;
  sol.y = Eigen::VectorXd::Constant(n, -1.0);
  sol.violated.assign(static_cast<std::size_t>(s_count), false);
  bool have_g = false;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name;
    double value = 0.0;
    if (!(ls >> name)) continue;
    if (!(ls >> value)) throw IoError("solution file: missing value at line " + std::to_string(lineno));

    auto bracket_index = [&](const std::string& s, const char* stem) -> int {
      const std::size_t stem_len = std::string(stem).size();
      if (s.size() < stem_len + 3 || s.compare(0, stem_len, stem) != 0 || s[stem_len] != '[') return -1;
      const auto close = s.find(']', stem_len);
      if (close == std::string::npos) return -1;
      return std::stoi(s.substr(stem_len + 1, close - stem_len - 1));
    };

    if (name == "g") {
      sol.g = value;
      have_g = true;
    } else if (int yi = bracket_index(name, "y"); yi >= 0) {
      if (yi >= n) throw IoError("solution file: y index out of range at line " + std::to_string(lineno));
      if (std::abs(value - std::round(value)) > 1e-4) {
        throw IoError("solution file: non-binary y value at line " + std::to_string(lineno));
      }
      sol.y[yi] = std::round(value);
    } else if (int vi = bracket_index(name, "v"); vi >= 0) {
      if (vi >= s_count) throw IoError("solution file: v index out of range at line " + std::to_string(lineno));
      sol.violated[static_cast<std::size_t>(vi)] = std::round(value) != 0.0;
    } else if (name == "t" || bracket_index(name, "u") >= 0 || bracket_index(name, "z") >= 0 ||
               name.rfind("s[", 0) == 0 || name.rfind("Z[", 0) == 0) {
      // implied lifted auxiliaries; ignored
    } else {
      throw IoError("solution file: unknown variable '" + name + "' at line " + std::to_string(lineno));
    }
  }

  if (!have_g) throw IoError("solution file: missing g");
  for (int i = 0; i < n; ++i) {
    if (sol.y[i] < 0.0) throw IoError("solution file: missing y[" + std::to_string(i) + "]");
  }
  return sol;
}

}  // namespace actris::saa
