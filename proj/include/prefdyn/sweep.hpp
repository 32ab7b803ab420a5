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

#ifndef PREFDYN_SWEEP_HPP
#define PREFDYN_SWEEP_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "prefdyn/engine.hpp"
#include "prefdyn/metrics.hpp"

namespace prefdyn {

struct SweepResult {
  std::size_t config_id = 0;
  std::uint64_t seed = 0;
  std::optional<MetricSummary> summary;  // empty when the run failed
  std::string error;
};

/// Called once per finished run, possibly from a worker thread. Must not
/// touch state shared with other runs.
using RunObserver = std::function<void(std::size_t run_index,
                                       std::size_t config_id, std::uint64_t seed,
                                       const TrajectoryLog& log,
                                       const MetricSummary& summary)>;

/// Simulates every (config, seed) pair; each config's own `seed` field is
/// replaced by the pair's seed. Results come back in grid-major, seed-minor
/// order regardless of `parallelism`. A failing run is recorded in its row
/// and does not stop the others.
std::vector<SweepResult> run_sweep(const std::vector<SimulationConfig>& grid,
                                   const std::vector<std::uint64_t>& seeds,
                                   std::size_t parallelism,
                                   const SummaryOptions& options = {},
                                   const RunObserver& observer = {});

}  // namespace prefdyn

#endif  // PREFDYN_SWEEP_HPP
