#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pairwise {

inline constexpr const char* toolkit_version = "pairwise 0.1.0";

struct ScenarioConfig {
  std::string scenario;
  std::map<std::string, std::string> params;  // key=value overrides
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  bool emit_plots = false;
};

struct RunManifest {
  std::string scenario;
  std::map<std::string, std::string> resolved_params;
  std::uint64_t seed = 0;
  std::string version;
  std::string started_utc;
  std::string finished_utc;
  std::vector<std::pair<std::string, std::string>> files;  // name, sha256
};

struct ScenarioInfo {
  std::string name;
  std::string module;
  std::string description;
};

// fixed registry, sorted by name
const std::vector<ScenarioInfo>& scenario_registry();

struct UnknownScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadParamsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Executes the scenario deterministically, writes its data tables (plus an
// optional plotting script) into out_dir and a manifest.txt alongside.
RunManifest run_scenario(const ScenarioConfig& config);

std::string format_manifest(const RunManifest& manifest);

}  // namespace pairwise
