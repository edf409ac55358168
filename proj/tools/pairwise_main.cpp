#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <string>
#include <vector>

#include "pairwise/scenario.hpp"

namespace {

// flat key=value parameter files ('#' comments, blank lines ignored)
bool load_param_file(const std::string& path, pairwise::ScenarioConfig& config) {
  std::ifstream in(path);
  if (!in) {
    std::fprintf(stderr, "error: cannot open parameter file '%s'\n", path.c_str());
    return false;
  }
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) config.params[key] = value;
  }
  return true;
}

int run_command(const std::string& scenario, const std::string& param_file,
                const std::vector<std::string>& sets, std::uint64_t seed, const std::string& out_dir,
                bool plots) {
  pairwise::ScenarioConfig config;
  config.scenario = scenario;
  config.seed = seed;
  config.out_dir = out_dir;
  config.emit_plots = plots;
  if (!param_file.empty() && !load_param_file(param_file, config)) return 4;
  for (const auto& kv : sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
      return 3;
    }
    config.params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }

  try {
    auto manifest = pairwise::run_scenario(config);
    std::printf("%s", pairwise::format_manifest(manifest).c_str());
    return 0;
  } catch (const pairwise::UnknownScenarioError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const pairwise::BadParamsError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const pairwise::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

int list_command() {
  for (const auto& info : pairwise::scenario_registry())
    std::printf("%-22s %-24s %s\n", info.name.c_str(), info.module.c_str(), info.description.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pairwise: simulation toolkit for broadband spectrally correlated light"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a scenario and emit data tables plus a manifest");
  std::string scenario;
  std::string param_file;
  std::vector<std::string> sets;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  bool plots = false;
  run->add_option("scenario", scenario, "scenario name (see `pairwise list`)")->required();
  run->add_option("--config", param_file, "key=value parameter file (overridden by --set)");
  run->add_option("--set", sets, "parameter override key=value (repeatable)");
  run->add_option("--seed", seed, "random seed");
  run->add_option("--out", out_dir, "output directory");
  run->add_flag("--plots", plots, "also emit a plotting script");

  auto* list = app.add_subcommand("list", "list available scenarios");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) return list_command();
  return run_command(scenario, param_file, sets, seed, out_dir, plots);
}
