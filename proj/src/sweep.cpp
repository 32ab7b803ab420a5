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

#include "prefdyn/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace prefdyn {

std::vector<SweepResult> run_sweep(const std::vector<SimulationConfig>& grid,
                                   const std::vector<std::uint64_t>& seeds,
                                   std::size_t parallelism,
                                   const SummaryOptions& options,
                                   const RunObserver& observer) {
  if (grid.empty()) throw ConfigError("sweep grid is empty");
  if (seeds.empty()) throw ConfigError("sweep needs at least one seed");

  const std::size_t total = grid.size() * seeds.size();
  std::vector<SweepResult> results(total);
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (std::size_t k = next.fetch_add(1); k < total; k = next.fetch_add(1)) {
      SweepResult& row = results[k];
      row.config_id = k / seeds.size();
      row.seed = seeds[k % seeds.size()];
      try {
        SimulationConfig cfg = grid[row.config_id];
        cfg.seed = row.seed;
        const TrajectoryLog log = run_simulation(cfg);
        MetricSummary summary = summarize(log, options);
        if (observer) observer(k, row.config_id, row.seed, log, summary);
        row.summary = std::move(summary);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(parallelism, 1, total);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return results;
}

}  // namespace prefdyn
