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

#ifndef PREFDYN_EXPERIMENT_HPP
#define PREFDYN_EXPERIMENT_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "prefdyn/manifest.hpp"

namespace prefdyn {

struct ExperimentOptions {
  std::filesystem::path out_dir = "out";
  std::size_t parallelism = 1;
  std::ostream* log = nullptr;  // seed and config echo; nullptr is silent
};

struct ExperimentReport {
  std::filesystem::path directory;  // out_dir / manifest name
  std::size_t runs = 0;
  std::size_t failures = 0;
  std::vector<std::filesystem::path> files;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitRunFailure = 1;
inline constexpr int kExitConfigError = 2;

/// Expands the grid, runs every (cell, seed) pair and writes
///
///   <out_dir>/<name>/trajectories/cfg<id>_seed<seed>.csv
///   <out_dir>/<name>/summary.csv
///   <out_dir>/<name>/plot_data.csv
///
/// as requested by manifest.outputs. Every file starts with '# ' lines
/// holding a manifest that reproduces it. Throws ConfigError for an invalid
/// manifest; individual run failures are counted in the report.
ExperimentReport run_experiment(const ExperimentManifest& manifest,
                                const ExperimentOptions& options);

/// Header row of a trajectory CSV for dimension d.
std::string trajectory_header(std::size_t d);

/// Trajectory rows (header included, no echo). Row 0 is the initial snapshot
/// and leaves the interaction fields empty.
std::string trajectory_csv(const TrajectoryLog& log);

inline constexpr const char* kSummaryHeader =
    "config_id,label,seed,status,mean_engagement,mean_noiseless_engagement,"
    "consumption_entropy,mean_magnitude,final_magnitude,peak_count,"
    "median_period,amplitude,error";

inline constexpr const char* kPlotDataHeader = "panel,config_id,label,seed,t,series,value";

}  // namespace prefdyn

#endif  // PREFDYN_EXPERIMENT_HPP
