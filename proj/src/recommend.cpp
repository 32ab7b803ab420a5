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

#include "prefdyn/recommend.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace prefdyn {

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::uniform: return "uniform";
    case PolicyKind::constant: return "constant";
    case PolicyKind::greedy: return "greedy";
    case PolicyKind::softmax: return "softmax";
    case PolicyKind::persistent_softmax: return "persistent_softmax";
  }
  return "?";
}

PolicyKind policy_kind_from_string(std::string_view name) {
  for (auto k : {PolicyKind::uniform, PolicyKind::constant, PolicyKind::greedy,
                 PolicyKind::softmax, PolicyKind::persistent_softmax}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown policy kind '" + std::string(name) + "'");
}

void PolicyConfig::validate(std::size_t catalog_size) const {
  if (!std::isfinite(beta) || beta < 0.0) {
    throw ConfigError("policy beta must be finite and >= 0");
  }
  if (kind == PolicyKind::constant && constant_index >= catalog_size) {
    throw ConfigError("constant_index " + std::to_string(constant_index) +
                      " out of range for catalog of size " +
                      std::to_string(catalog_size));
  }
}

ScoreVector score_items(std::span<const double> estimate,
                        const ItemCatalog& catalog) {
  if (estimate.size() != catalog.dim()) {
    throw ContractViolation("score_items: estimate dimension does not match catalog");
  }
  ScoreVector out;
  out.scores.resize(catalog.size());
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    out.scores[i] = dot(estimate, catalog.item(i));
  }
  return out;
}

Vector softmax_probabilities(std::span<const double> scores, double beta_eff,
                             const std::vector<bool>* allowed) {
  const std::size_t n = scores.size();
  auto ok = [&](std::size_t i) { return allowed == nullptr || (*allowed)[i]; };
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (ok(i)) top = std::max(top, beta_eff * scores[i]);
  }
  Vector p(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!ok(i)) continue;
    p[i] = std::exp(beta_eff * scores[i] - top);
    total += p[i];
  }
  for (auto& x : p) x /= total;
  return p;
}

double effective_beta(double beta, double estimate_norm) {
  return estimate_norm > 0.0 ? beta / estimate_norm : 0.0;
}

std::size_t sample_index(std::span<const double> probs, RngStream& rng) {
  const double u = rng.uniform01();
  double cum = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    cum += probs[i];
    last_positive = i;
    if (u < cum) return i;
  }
  // u landed in the rounding gap above the final cumulative sum.
  return last_positive;
}

std::size_t select_uniform(std::size_t n, RngStream& rng) {
  return rng.uniform_index(n);
}

std::size_t select_constant(const PolicyConfig& cfg) { return cfg.constant_index; }

std::size_t select_greedy(const ScoreVector& scores, RngStream& rng) {
  if (scores.scores.empty()) throw ContractViolation("select_greedy: no scores");
  const double best = *std::max_element(scores.scores.begin(), scores.scores.end());
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores.scores[i] == best) ties.push_back(i);
  }
  if (ties.size() == 1) return ties.front();
  return ties[rng.uniform_index(ties.size())];
}

std::size_t select_softmax(const ScoreVector& scores, double beta,
                           double estimate_norm, RngStream& rng) {
  const Vector p = softmax_probabilities(scores.scores, effective_beta(beta, estimate_norm));
  return sample_index(p, rng);
}

std::optional<std::vector<bool>> momentum_half_space(
    std::span<const double> estimate_now,
    std::optional<std::span<const double>> estimate_prev,
    const ItemCatalog& catalog, MomentumDirection mode) {
  if (!estimate_prev) return std::nullopt;
  require_same_dim(estimate_now, *estimate_prev, "momentum_half_space");
  double scale_now = 1.0;
  double scale_prev = 1.0;
  if (mode == MomentumDirection::normalized) {
    const double a = norm(estimate_now);
    const double b = norm(*estimate_prev);
    if (a == 0.0 || b == 0.0) return std::nullopt;
    scale_now = 1.0 / a;
    scale_prev = 1.0 / b;
  }
  Vector direction(estimate_now.size());
  bool moved = false;
  for (std::size_t i = 0; i < direction.size(); ++i) {
    direction[i] = estimate_now[i] * scale_now - (*estimate_prev)[i] * scale_prev;
    moved = moved || direction[i] != 0.0;
  }
  if (!moved) return std::nullopt;
  std::vector<bool> allowed(catalog.size());
  bool any = false;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    allowed[i] = dot(direction, catalog.item(i)) > 0.0;
    any = any || allowed[i];
  }
  if (!any) return std::nullopt;
  return allowed;
}

Vector persistent_softmax_probabilities(
    const ScoreVector& scores, double beta_eff,
    std::span<const double> estimate_now,
    std::optional<std::span<const double>> estimate_prev,
    const ItemCatalog& catalog, MomentumDirection direction) {
  const auto allowed =
      momentum_half_space(estimate_now, estimate_prev, catalog, direction);
  if (!allowed) return softmax_probabilities(scores.scores, beta_eff);
  return softmax_probabilities(scores.scores, beta_eff, &*allowed);
}

std::size_t select_persistent_softmax(
    const ScoreVector& scores, double beta, std::span<const double> estimate_now,
    std::optional<std::span<const double>> estimate_prev,
    const ItemCatalog& catalog, RngStream& rng, bool norm_scaling,
    MomentumDirection direction) {
  const double beta_eff =
      norm_scaling ? effective_beta(beta, norm(estimate_now)) : beta;
  const Vector p = persistent_softmax_probabilities(scores, beta_eff, estimate_now,
                                                    estimate_prev, catalog, direction);
  return sample_index(p, rng);
}

}  // namespace prefdyn
