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

#include "prefdyn/engine.hpp"

#include <cmath>
#include <string>

namespace prefdyn {

void SimulationConfig::validate() const {
  if (n < 1) throw ConfigError("n must be >= 1");
  if (d < 1) throw ConfigError("d must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("sigma must be finite and > 0");
  }
  if (steps < 0) throw ConfigError("steps must be >= 0");
  if (!(rating_noise_std >= 0.0) || !std::isfinite(rating_noise_std)) {
    throw ConfigError("rating_noise_std must be finite and >= 0");
  }
  dynamics.validate();
  policy.validate(n);
  if (estimator.mode == EstimatorMode::ogd) {
    EstimatorState probe{Vector(d, 0.0), estimator.alpha, estimator.eta};
    probe.validate();
  }
  if (baseline_mode == BaselineMode::given) {
    if (baseline.size() != d) {
      throw ConfigError("baseline must have exactly d = " + std::to_string(d) +
                        " entries");
    }
    if (!all_finite(baseline)) throw ConfigError("baseline has non-finite entries");
  }
}

namespace {

void guard_finite(std::span<const double> v, std::int64_t step,
                  const char* what) {
  if (!all_finite(v)) {
    throw SimulationError(std::string("non-finite ") + what + " at step " +
                          std::to_string(step));
  }
}

}  // namespace

TrajectoryLog run_simulation(const SimulationConfig& cfg) {
  cfg.validate();
  RngStream catalog_rng(cfg.seed, std::string(kCatalogStream));
  RngStream pref_rng(cfg.seed, std::string(kPreferenceStream));
  auto catalog = std::make_shared<const ItemCatalog>(
      sample_catalog(cfg.n, cfg.d, cfg.sigma, catalog_rng));
  PreferenceState initial = sample_initial_preference(cfg.d, cfg.sigma, pref_rng);
  switch (cfg.baseline_mode) {
    case BaselineMode::initial: break;
    case BaselineMode::origin: initial.baseline.assign(cfg.d, 0.0); break;
    case BaselineMode::given: initial.baseline = cfg.baseline; break;
  }
  return run_simulation(cfg, std::move(catalog), std::move(initial));
}

TrajectoryLog run_simulation(const SimulationConfig& cfg,
                             std::shared_ptr<const ItemCatalog> catalog,
                             PreferenceState initial,
                             std::optional<Vector> initial_estimate) {
  cfg.dynamics.validate();
  cfg.policy.validate(catalog->size());
  if (cfg.steps < 0) throw ConfigError("steps must be >= 0");
  initial.validate();
  if (initial.pi.size() != catalog->dim()) {
    throw ConfigError("initial preference dimension does not match catalog");
  }
  const bool oracle = cfg.estimator.mode == EstimatorMode::oracle;

  EstimatorState est;
  est.alpha = cfg.estimator.alpha;
  est.eta = cfg.estimator.eta;
  if (initial_estimate) {
    est.u = std::move(*initial_estimate);
  } else if (oracle || cfg.estimator.init == EstimateInit::truth) {
    est.u = initial.pi;
  } else {
    RngStream est_rng(cfg.seed, std::string(kEstimateStream));
    est.u = sample_initial_preference(catalog->dim(), cfg.sigma, est_rng).pi;
  }
  if (!oracle) est.validate();
  require_same_dim(est.u, initial.pi, "initial estimate");

  RngStream policy_rng(cfg.seed, std::string(kPolicyStream));
  RngStream rating_rng(cfg.seed, std::string(kRatingNoiseStream));
  RngStream noise_rng(cfg.seed, std::string(kPrefNoiseStream));

  TrajectoryLog log;
  log.config = cfg;
  log.catalog = catalog;
  log.baseline = initial.baseline;
  const auto steps = static_cast<std::size_t>(cfg.steps);
  log.pi.reserve(steps + 1);
  log.u.reserve(steps + 1);
  log.pi_norm.reserve(steps + 1);
  log.items.reserve(steps);
  log.ratings.reserve(steps);
  log.noiseless_ratings.reserve(steps);
  log.selected_scores.reserve(steps);

  PreferenceState pref = std::move(initial);
  log.pi.push_back(pref.pi);
  log.u.push_back(oracle ? pref.pi : est.u);
  log.pi_norm.push_back(norm(pref.pi));

  DiscountedAverage expected(cfg.dynamics.discount_delta);
  std::optional<Vector> previous_scorer;
  const PolicyKind kind = cfg.policy.kind;
  const bool needs_all_scores = kind == PolicyKind::greedy ||
                                kind == PolicyKind::softmax ||
                                kind == PolicyKind::persistent_softmax;

  for (std::size_t step = 1; step <= steps; ++step) {
    const auto t = static_cast<std::int64_t>(step);
    const Vector& scorer = oracle ? pref.pi : est.u;

    ScoreVector scores;
    if (needs_all_scores) scores = score_items(scorer, *catalog);

    std::size_t chosen = 0;
    switch (kind) {
      case PolicyKind::uniform:
        chosen = select_uniform(catalog->size(), policy_rng);
        break;
      case PolicyKind::constant:
        chosen = select_constant(cfg.policy);
        break;
      case PolicyKind::greedy:
        chosen = select_greedy(scores, policy_rng);
        break;
      case PolicyKind::softmax:
        chosen = select_softmax(scores, cfg.policy.beta, norm(scorer), policy_rng);
        break;
      case PolicyKind::persistent_softmax: {
        std::optional<std::span<const double>> prev;
        if (previous_scorer) prev = std::span<const double>(*previous_scorer);
        chosen = select_persistent_softmax(scores, cfg.policy.beta, scorer, prev,
                                           *catalog, policy_rng,
                                           cfg.policy.persistent_norm_scaling,
                                           cfg.policy.momentum);
        break;
      }
    }
    const auto item = catalog->item(chosen);
    const double predicted =
        needs_all_scores ? scores.scores[chosen] : dot(scorer, item);
    if (kind == PolicyKind::persistent_softmax) previous_scorer = scorer;

    const Rating rating = rate(pref.pi, item, cfg.rating_noise_std, rating_rng);
    if (!std::isfinite(rating.observed)) {
      throw SimulationError("non-finite rating at step " + std::to_string(t));
    }

    if (!oracle) {
      est = ogd_update(est, item, rating.observed, predicted);
      guard_finite(est.u, t, "estimate");
    }
    pref = composite_update(pref, item, rating.observed, expected.value(),
                            cfg.dynamics, noise_rng);
    guard_finite(pref.pi, t, "preference");
    expected.push(rating.observed);

    log.items.push_back(chosen);
    log.ratings.push_back(rating.observed);
    log.noiseless_ratings.push_back(rating.noiseless);
    log.selected_scores.push_back(predicted);
    log.pi.push_back(pref.pi);
    log.u.push_back(oracle ? pref.pi : est.u);
    log.pi_norm.push_back(norm(pref.pi));
  }
  return log;
}

}  // namespace prefdyn
