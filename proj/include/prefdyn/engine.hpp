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

#ifndef PREFDYN_ENGINE_HPP
#define PREFDYN_ENGINE_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "prefdyn/core.hpp"
#include "prefdyn/dynamics.hpp"
#include "prefdyn/estimate.hpp"
#include "prefdyn/recommend.hpp"

namespace prefdyn {

/// Raised when a run produces a non-finite value; the message names the step.
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EstimatorMode { ogd, oracle };
enum class EstimateInit { sampled, truth };
enum class BaselineMode { initial, origin, given };

struct EstimatorConfig {
  EstimatorMode mode = EstimatorMode::ogd;
  double alpha = 0.05;
  double eta = 0.01;
  /// `truth` starts the estimate at pi_0 instead of an independent draw.
  EstimateInit init = EstimateInit::sampled;

  bool operator==(const EstimatorConfig&) const = default;
};

struct SimulationConfig {
  std::size_t n = 1000;
  std::size_t d = 2;
  double sigma = 1.0;
  std::int64_t steps = 1000;
  double rating_noise_std = 0.05;
  std::uint64_t seed = 0;
  DynamicsConfig dynamics;
  PolicyConfig policy;
  EstimatorConfig estimator;
  BaselineMode baseline_mode = BaselineMode::initial;
  Vector baseline;  // used when baseline_mode == given

  void validate() const;
  bool operator==(const SimulationConfig&) const = default;
};

/// Everything a run produced. pi/u/pi_norm hold steps + 1 snapshots
/// (index 0 is the initial state); per-interaction series hold `steps`.
struct TrajectoryLog {
  SimulationConfig config;
  std::shared_ptr<const ItemCatalog> catalog;
  Vector baseline;
  std::vector<Vector> pi;
  std::vector<Vector> u;
  Vector pi_norm;
  std::vector<std::size_t> items;
  Vector ratings;
  Vector noiseless_ratings;
  Vector selected_scores;  // predicted score of the chosen item

  std::size_t steps() const { return items.size(); }
};

// Stream labels, one per source of randomness.
inline constexpr std::string_view kCatalogStream = "catalog";
inline constexpr std::string_view kPreferenceStream = "preference";
inline constexpr std::string_view kEstimateStream = "estimate";
inline constexpr std::string_view kRatingNoiseStream = "rating-noise";
inline constexpr std::string_view kPrefNoiseStream = "pref-noise";
inline constexpr std::string_view kPolicyStream = "policy";

TrajectoryLog run_simulation(const SimulationConfig& cfg);

/// Runs the loop on a caller-supplied catalog and initial state. When
/// `initial_estimate` is empty, u_0 follows cfg.estimator.init.
TrajectoryLog run_simulation(const SimulationConfig& cfg,
                             std::shared_ptr<const ItemCatalog> catalog,
                             PreferenceState initial,
                             std::optional<Vector> initial_estimate = std::nullopt);

}  // namespace prefdyn

#endif  // PREFDYN_ENGINE_HPP
