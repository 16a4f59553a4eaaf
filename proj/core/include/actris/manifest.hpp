// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace actris {

/// Provenance record of one CLI run. The manifest hash covers the tool
/// version, subcommand, logical parameters, config snapshot and seed -- not
/// artifact paths or timings -- so identical logical runs carry identical
/// hashes and their artifacts are byte-reproducible.
struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> params;
  std::string config_snapshot_json;
  std::uint64_t seed = 0;

  std::map<std::string, std::string> artifacts;
  std::map<std::string, double> wall_clock_seconds;

  std::string hash_hex() const;
  std::string to_json() const;
};

void write_manifest_file(const std::string& path, const RunManifest& manifest);

}  // namespace actris
