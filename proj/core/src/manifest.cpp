// SPDX-License-Identifier: Apache-2.0
#include "actris/manifest.hpp"

#include "actris/common.hpp"
#include "actris/version.hpp"
#include "json.hpp"

namespace actris {

namespace {
using nlohmann::json;
}

std::string RunManifest::hash_hex() const {
  json core;
  core["tool_version"] = kVersion;
  core["subcommand"] = subcommand;
  core["params"] = params;
  core["config"] = config_snapshot_json.empty() ? json() : json::parse(config_snapshot_json);
  core["seed"] = std::to_string(seed);
  return actris::hash_hex(fnv1a64(core.dump()));
}

std::string RunManifest::to_json() const {
  json root;
  root["kind"] = "actris-manifest";
  root["tool_version"] = kVersion;
  root["subcommand"] = subcommand;
  root["params"] = params;
  root["config"] = config_snapshot_json.empty() ? json() : json::parse(config_snapshot_json);
  root["seed"] = std::to_string(seed);
  root["manifest_hash"] = hash_hex();
  root["artifacts"] = artifacts;
  root["wall_clock_seconds"] = wall_clock_seconds;
  return root.dump(2);
}

void write_manifest_file(const std::string& path, const RunManifest& manifest) {
  atomic_write_file(path, manifest.to_json());
}

}  // namespace actris
