// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "actris/channel.hpp"
#include "actris/config.hpp"

namespace actris {

/// A persisted sample set: config snapshot, seed provenance and the derived
/// per-sample coefficients, replayable without re-drawing channels.
struct ScenarioSet {
  ScenarioConfig cfg;
  std::uint64_t master_seed = 0;
  std::vector<channel::ScenarioSample> samples;
  std::string config_hash_hex;
  std::string content_hash_hex;  // hash of the serialized sample payload
};

/// Serializes config + seed + derived coefficients (raw channels are not
/// persisted). The emitted bytes are deterministic for a given input.
std::string scenario_file_text(const ScenarioConfig& cfg, std::uint64_t seed,
                               const std::vector<channel::ScenarioSample>& samples);

void write_scenario_file(const std::string& path, const ScenarioConfig& cfg, std::uint64_t seed,
                         const std::vector<channel::ScenarioSample>& samples);

ScenarioSet load_scenario_file(const std::string& path);

/// Content hash of a drawn sample set (the hash stored in scenario files).
std::string scenario_content_hash(const std::vector<channel::ScenarioSample>& samples);

}  // namespace actris
