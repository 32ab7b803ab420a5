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

#ifndef PREFDYN_RECOMMEND_HPP
#define PREFDYN_RECOMMEND_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "prefdyn/core.hpp"

namespace prefdyn {

enum class PolicyKind { uniform, constant, greedy, softmax, persistent_softmax };

/// How the persistent policy measures estimate movement: the raw difference
/// u_t - u_{t-1}, or the difference of the unit vectors u/|u| (angular
/// movement only).
enum class MomentumDirection { raw, normalized };

std::string_view to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(std::string_view name);

struct PolicyConfig {
  PolicyKind kind = PolicyKind::softmax;
  double beta = 1.0;
  std::size_t constant_index = 0;
  /// Divide beta by the estimate norm in the persistent policy too, so that
  /// persistent and plain softmax at the same beta share a temperature scale.
  bool persistent_norm_scaling = true;
  MomentumDirection momentum = MomentumDirection::normalized;

  void validate(std::size_t catalog_size) const;
  bool operator==(const PolicyConfig&) const = default;
};

/// Predicted score of every item, s_i = <estimate, v_i>.
struct ScoreVector {
  Vector scores;
  std::size_t size() const { return scores.size(); }
};

ScoreVector score_items(std::span<const double> estimate,
                        const ItemCatalog& catalog);

/// Selection probabilities p_i proportional to exp(beta_eff * s_i), computed
/// with max subtraction. Entries outside `allowed` (when given) get 0.
Vector softmax_probabilities(std::span<const double> scores, double beta_eff,
                             const std::vector<bool>* allowed = nullptr);

/// beta / norm, or 0 when the norm is 0 (uniform fallback).
double effective_beta(double beta, double estimate_norm);

/// Draws an index from a probability vector by inverse CDF.
std::size_t sample_index(std::span<const double> probs, RngStream& rng);

std::size_t select_uniform(std::size_t n, RngStream& rng);

std::size_t select_constant(const PolicyConfig& cfg);

/// Uniform draw among all indices attaining the maximum score.
std::size_t select_greedy(const ScoreVector& scores, RngStream& rng);

std::size_t select_softmax(const ScoreVector& scores, double beta,
                           double estimate_norm, RngStream& rng);

/// Items with <m, v> > 0, where m is the estimate movement measured per
/// `direction`, or std::nullopt when the
/// momentum filter does not apply (no previous estimate, zero movement, or
/// empty half-space).
std::optional<std::vector<bool>> momentum_half_space(
    std::span<const double> estimate_now,
    std::optional<std::span<const double>> estimate_prev,
    const ItemCatalog& catalog,
    MomentumDirection direction = MomentumDirection::raw);

/// Selection distribution of the momentum ("persistent") softmax; falls back
/// to plain softmax when the half-space filter does not apply. `beta_eff`
/// is already norm-scaled if the caller wants that.
Vector persistent_softmax_probabilities(
    const ScoreVector& scores, double beta_eff,
    std::span<const double> estimate_now,
    std::optional<std::span<const double>> estimate_prev,
    const ItemCatalog& catalog,
    MomentumDirection direction = MomentumDirection::raw);

std::size_t select_persistent_softmax(
    const ScoreVector& scores, double beta, std::span<const double> estimate_now,
    std::optional<std::span<const double>> estimate_prev,
    const ItemCatalog& catalog, RngStream& rng, bool norm_scaling = false,
    MomentumDirection direction = MomentumDirection::raw);

}  // namespace prefdyn

#endif  // PREFDYN_RECOMMEND_HPP
