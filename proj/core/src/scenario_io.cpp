// SPDX-License-Identifier: Apache-2.0
#include "actris/scenario_io.hpp"

#include "actris/common.hpp"
#include "json.hpp"

namespace actris {

namespace {

using nlohmann::json;

json rvector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::VectorXd rvector_from(const json& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
  return out;
}

json sample_json(const channel::ScenarioSample& s) {
  json out;
  out["abs_d"] = s.desired.abs_d;
  out["r"] = rvector_json(s.desired.r);
  out["c"] = rvector_json(s.desired.c);
  json intf = json::array();
  for (const auto& link : s.interferers) {
    intf.push_back({{"abs_d", link.abs_d}, {"r", rvector_json(link.r)}, {"c", rvector_json(link.c)}});
  }
  out["interferers"] = intf;
  out["l"] = s.l;
  out["d0"] = s.d0;
  out["d1"] = s.d1;
  out["psi"] = rvector_json(s.psi);
  return out;
}

json samples_payload(const std::vector<channel::ScenarioSample>& samples) {
  json arr = json::array();
  for (const auto& s : samples) arr.push_back(sample_json(s));
  return arr;
}

}  // namespace

std::string scenario_content_hash(const std::vector<channel::ScenarioSample>& samples) {
  return hash_hex(fnv1a64(samples_payload(samples).dump()));
}

std::string scenario_file_text(const ScenarioConfig& cfg, std::uint64_t seed,
                               const std::vector<channel::ScenarioSample>& samples) {
  json root;
  root["kind"] = "actris-scenario";
  root["format_version"] = 1;
  root["config"] = json::parse(canonical_config_json(cfg));
  root["config_hash"] = hash_hex(config_hash(cfg));
  root["master_seed"] = std::to_string(seed);
  root["sample_count"] = samples.size();
  const json payload = samples_payload(samples);
  root["content_hash"] = hash_hex(fnv1a64(payload.dump()));
  root["samples"] = payload;
  return root.dump(1);
}

void write_scenario_file(const std::string& path, const ScenarioConfig& cfg, std::uint64_t seed,
                         const std::vector<channel::ScenarioSample>& samples) {
  atomic_write_file(path, scenario_file_text(cfg, seed, samples));
}

ScenarioSet load_scenario_file(const std::string& path) {
  json root;
  try {
    root = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw IoError("scenario file is not valid JSON: " + std::string(e.what()));
  }
  if (!root.is_object() || root.value("kind", "") != "actris-scenario") {
    throw IoError("not an actris scenario file: " + path);
  }
  if (root.value("format_version", 0) != 1) throw IoError("unsupported scenario format version");

  ScenarioSet set;
  set.cfg = parse_config(root.at("config").dump());
  set.master_seed = std::stoull(root.at("master_seed").get<std::string>());
  set.config_hash_hex = root.at("config_hash").get<std::string>();
  set.content_hash_hex = root.at("content_hash").get<std::string>();

  const json& arr = root.at("samples");
  set.samples.reserve(arr.size());
  std::uint32_t index = 0;
  for (const auto& sj : arr) {
    channel::ScenarioSample s;
    s.index = index++;
    s.seed = set.master_seed;
    s.desired.abs_d = sj.at("abs_d").get<double>();
    s.desired.r = rvector_from(sj.at("r"));
    s.desired.c = rvector_from(sj.at("c"));
    for (const auto& lj : sj.at("interferers")) {
      channel::PhaseAligned link;
      link.abs_d = lj.at("abs_d").get<double>();
      link.r = rvector_from(lj.at("r"));
      link.c = rvector_from(lj.at("c"));
      s.interferers.push_back(std::move(link));
    }
    s.l = sj.at("l").get<double>();
    s.d0 = sj.at("d0").get<double>();
    s.d1 = sj.at("d1").get<double>();
    s.psi = rvector_from(sj.at("psi"));
    set.samples.push_back(std::move(s));
  }

  const std::string recomputed = scenario_content_hash(set.samples);
  if (recomputed != set.content_hash_hex) {
    throw IoError("scenario file content hash mismatch (corrupted or edited file)");
  }
  return set;
}

}  // namespace actris
