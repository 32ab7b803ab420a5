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

// Experiment manifests.
//
// A manifest is an INI-style text file:
//
//   name = fig3                # top-level keys come before any section
//   seeds = 1..20              # list "1, 2, 5" or inclusive range "a..b"
//   max_runs = 10000           # cap on (grid cells x seeds)
//
//   [simulation]   n, d, sigma, steps, rating_noise_std,
//                  baseline (initial | origin | space-separated vector)
//   [dynamics]     gamma_me, gamma_oc, gamma_ha, discount_delta,
//                  pref_noise_std, surprise_sign (narrative | literal),
//                  surprise_scale (scaled_arctan | raw_arctan)
//   [policy]       kind (uniform | constant | greedy | softmax |
//                  persistent_softmax), beta, constant_index,
//                  persistent_norm_scaling (true | false),
//                  momentum (raw | normalized)
//   [estimator]    mode (ogd | oracle), alpha, eta, init (sampled | truth)
//   [output]       trajectory, summary, plot_data (true | false),
//                  entropy_window, engagement_window, prominence,
//                  plot_stride
//   [sweep]        section.key = v1, v2, ...   (cross product, in order)
//   [variant.NAME] section.key = value         (one grid block per variant)
//
// '#' starts a comment. Unknown sections or keys are errors that name the key
// and line. Omitted keys take the library defaults.

#ifndef PREFDYN_MANIFEST_HPP
#define PREFDYN_MANIFEST_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prefdyn/engine.hpp"
#include "prefdyn/metrics.hpp"

namespace prefdyn {

/// Schema violation; the message carries the key path and line number.
class ManifestError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

struct OutputOptions {
  bool trajectory = true;
  bool summary = true;
  bool plot_data = true;
  SummaryOptions metrics;
  std::size_t plot_stride = 1;

  bool operator==(const OutputOptions&) const = default;
};

/// One `section.key = value` assignment (variants) or value list (sweeps).
struct Assignment {
  std::string key;
  std::string value;
  bool operator==(const Assignment&) const = default;
};

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
  bool operator==(const SweepAxis&) const = default;
};

struct Variant {
  std::string label;
  std::vector<Assignment> assignments;
  bool operator==(const Variant&) const = default;
};

struct ExperimentManifest {
  std::string name = "experiment";
  SimulationConfig base;
  std::vector<SweepAxis> sweep;
  std::vector<Variant> variants;
  std::vector<std::uint64_t> seeds{0};
  OutputOptions outputs;
  std::size_t max_runs = 10000;

  bool operator==(const ExperimentManifest&) const = default;
};

/// One concrete configuration of the expanded grid.
struct GridCell {
  std::string label;
  SimulationConfig config;
};

ExperimentManifest parse_manifest(std::string_view text);

/// Canonical text form with every default spelled out. Parsing it yields an
/// equal manifest.
std::string serialize_manifest(const ExperimentManifest& manifest);

/// Variants x sweep cross product (last axis varies fastest). Every cell is
/// validated; the total run count is checked against max_runs.
std::vector<GridCell> expand_grid(const ExperimentManifest& manifest);

/// Sets simulation.steps everywhere, including any variant or sweep entry
/// that mentions it, so the echo stays consistent with what actually ran.
void override_steps(ExperimentManifest& manifest, std::int64_t steps);

/// Manifest describing a single run of `cell` with `seed` (no sweep).
ExperimentManifest single_run_manifest(const ExperimentManifest& parent,
                                       const GridCell& cell, std::uint64_t seed);

/// All `section.key` names that may appear in [sweep] and variants.
std::vector<std::string> config_keys();

/// "%.17g" formatting; round-trips every finite double exactly.
std::string format_double(double x);

}  // namespace prefdyn

#endif  // PREFDYN_MANIFEST_HPP
