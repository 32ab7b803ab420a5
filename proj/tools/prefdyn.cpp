// Copyright 2026 The prefdyn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run manifests and the bundled presets.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "prefdyn/experiment.hpp"
#include "prefdyn/manifest.hpp"

#ifndef PREFDYN_DEFAULT_PRESET_DIR
#define PREFDYN_DEFAULT_PRESET_DIR "experiments"
#endif

namespace fs = std::filesystem;

namespace {

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return (v != nullptr && *v != '\0') ? std::string(v) : fallback;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw prefdyn::ConfigError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

prefdyn::ExperimentManifest load(const fs::path& path) {
  try {
    return prefdyn::parse_manifest(read_file(path));
  } catch (const prefdyn::ConfigError& e) {
    throw prefdyn::ConfigError(path.string() + ": " + e.what());
  }
}

struct RunFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> steps;
  std::string out_dir;
  std::size_t parallelism = 0;
};

int execute(prefdyn::ExperimentManifest manifest, const RunFlags& flags) {
  if (flags.seed) manifest.seeds = {*flags.seed};
  if (flags.steps) prefdyn::override_steps(manifest, *flags.steps);
  prefdyn::ExperimentOptions opts;
  opts.out_dir = flags.out_dir.empty() ? env_or("PREFDYN_OUT_DIR", "out") : flags.out_dir;
  opts.parallelism = flags.parallelism != 0
                         ? flags.parallelism
                         : std::max(1u, std::thread::hardware_concurrency());
  opts.log = &std::cout;
  const auto report = prefdyn::run_experiment(manifest, opts);
  return report.failures == 0 ? prefdyn::kExitOk : prefdyn::kExitRunFailure;
}

std::vector<std::string> preset_names(const fs::path& dir) {
  std::vector<std::string> names;
  if (!fs::is_directory(dir)) return names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ini") {
      names.push_back(entry.path().stem().string());
    }
  }
  std::sort(names.begin(), names.end());
  return names;
}

void add_run_flags(CLI::App* cmd, RunFlags& flags) {
  cmd->add_option("--seed", flags.seed, "Run only this seed");
  cmd->add_option("--steps", flags.steps, "Override simulation.steps everywhere")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--out-dir", flags.out_dir,
                  "Output directory (default: $PREFDYN_OUT_DIR or ./out)");
  cmd->add_option("--parallelism", flags.parallelism,
                  "Worker threads (default: hardware concurrency)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate recommender feedback loops under preference dynamics."};
  app.require_subcommand(1);
  std::string preset_dir =
      env_or("PREFDYN_PRESET_DIR", PREFDYN_DEFAULT_PRESET_DIR);
  app.add_option("--preset-dir", preset_dir,
                 "Directory holding preset manifests (default: $PREFDYN_PRESET_DIR)");

  RunFlags flags;
  std::string manifest_path;
  std::string preset;

  auto* run = app.add_subcommand("run", "Run an experiment manifest");
  run->add_option("manifest", manifest_path, "Manifest file")->required();
  add_run_flags(run, flags);

  auto* preset_cmd = app.add_subcommand("preset", "Run a bundled preset by name");
  preset_cmd->add_option("name", preset, "Preset name (see list-presets)")->required();
  add_run_flags(preset_cmd, flags);

  auto* list = app.add_subcommand("list-presets", "List bundled presets");

  auto* validate = app.add_subcommand("validate", "Check a manifest and print it in full");
  validate->add_option("manifest", manifest_path, "Manifest file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? prefdyn::kExitOk : prefdyn::kExitConfigError;
  }

  try {
    if (*list) {
      for (const auto& name : preset_names(preset_dir)) std::cout << name << '\n';
      return prefdyn::kExitOk;
    }
    if (*validate) {
      const auto manifest = load(manifest_path);
      const auto cells = prefdyn::expand_grid(manifest);
      std::cout << prefdyn::serialize_manifest(manifest) << "\n# " << cells.size()
                << " config(s) x " << manifest.seeds.size() << " seed(s)\n";
      return prefdyn::kExitOk;
    }
    if (*preset_cmd) {
      const fs::path path = fs::path(preset_dir) / (preset + ".ini");
      if (!fs::exists(path)) {
        std::cerr << "unknown preset '" << preset << "' (looked in " << preset_dir << ")\n";
        return prefdyn::kExitConfigError;
      }
      return execute(load(path), flags);
    }
    return execute(load(manifest_path), flags);
  } catch (const prefdyn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return prefdyn::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return prefdyn::kExitRunFailure;
  }
}
