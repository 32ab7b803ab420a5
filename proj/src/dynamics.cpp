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

#include "prefdyn/dynamics.hpp"

#include <cmath>
#include <numbers>

namespace prefdyn {

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

void check_gamma(double gamma, const char* what) {
  if (!in_unit_interval(gamma)) {
    throw ContractViolation(std::string(what) + ": gamma must be in [0, 1]");
  }
}

void add_into(Vector& acc, const Vector& delta) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += delta[i];
}

}  // namespace

void DynamicsConfig::validate() const {
  if (!in_unit_interval(gamma_me)) throw ConfigError("gamma_me must be in [0, 1]");
  if (!in_unit_interval(gamma_oc)) throw ConfigError("gamma_oc must be in [0, 1]");
  if (!in_unit_interval(gamma_ha)) throw ConfigError("gamma_ha must be in [0, 1]");
  // Small slack so that e.g. 0.7 + 0.2 + 0.1 is not rejected by rounding.
  if (gamma_me + gamma_oc + gamma_ha > 1.0 + 1e-12) {
    throw ConfigError("gamma_me + gamma_oc + gamma_ha must be <= 1");
  }
  if (!in_unit_interval(discount_delta)) {
    throw ConfigError("discount_delta must be in [0, 1]");
  }
  if (!(pref_noise_std >= 0.0) || !std::isfinite(pref_noise_std)) {
    throw ConfigError("pref_noise_std must be finite and >= 0");
  }
}

PreferenceDelta mere_exposure_delta(std::span<const double> pi,
                                    std::span<const double> item,
                                    double gamma) {
  require_same_dim(pi, item, "mere_exposure_delta");
  check_gamma(gamma, "mere_exposure_delta");
  Vector out(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) out[i] = gamma * (item[i] - pi[i]);
  return {std::move(out)};
}

double discounted_baseline(const InteractionHistory& history, double delta) {
  if (!in_unit_interval(delta)) {
    throw ContractViolation("discounted_baseline: delta must be in [0, 1]");
  }
  const auto& recs = history.records();
  if (recs.empty()) return 0.0;
  if (delta == 0.0) return recs.back().rating;
  double num = 0.0;
  double den = 0.0;
  const std::size_t t = recs.size();
  for (std::size_t tau = 1; tau <= t; ++tau) {
    const double w = std::pow(delta, static_cast<double>(tau));
    num += w * recs[t - tau].rating;
    den += w;
  }
  if (den == 0.0) return recs.back().rating;
  return num / den;
}

DiscountedAverage::DiscountedAverage(double delta) : delta_(delta) {
  if (!in_unit_interval(delta)) {
    throw ContractViolation("DiscountedAverage: delta must be in [0, 1]");
  }
}

double DiscountedAverage::value() const {
  if (!any_) return 0.0;
  if (weight_total_ == 0.0) return last_;
  return weighted_sum_ / weight_total_;
}

void DiscountedAverage::push(double rating) {
  // S_{t+1} = delta * (r_t + S_t), W_{t+1} = delta * (1 + W_t)
  weighted_sum_ = delta_ * (rating + weighted_sum_);
  weight_total_ = delta_ * (1.0 + weight_total_);
  last_ = rating;
  any_ = true;
}

double surprise(double baseline, double current_rating,
                const DynamicsConfig& cfg) {
  const double gap = cfg.surprise_sign == SurpriseSign::narrative
                         ? current_rating - baseline
                         : baseline - current_rating;
  const double a = std::atan(gap);
  return cfg.surprise_scale == SurpriseScale::scaled_arctan
             ? a * (2.0 / std::numbers::pi)
             : a;
}

PreferenceDelta operant_conditioning_delta(std::span<const double> pi,
                                           std::span<const double> item,
                                           double surp, double gamma) {
  require_same_dim(pi, item, "operant_conditioning_delta");
  check_gamma(gamma, "operant_conditioning_delta");
  Vector out(pi.size(), 0.0);
  if (surp == 0.0) return {std::move(out)};
  const double sgn = surp > 0.0 ? 1.0 : -1.0;
  const double scale = gamma * std::abs(surp);
  for (std::size_t i = 0; i < pi.size(); ++i) {
    out[i] = scale * (sgn * item[i] - pi[i]);
  }
  return {std::move(out)};
}

PreferenceDelta hedonic_adaptation_delta(std::span<const double> pi,
                                         std::span<const double> baseline_pref,
                                         double gamma) {
  require_same_dim(pi, baseline_pref, "hedonic_adaptation_delta");
  check_gamma(gamma, "hedonic_adaptation_delta");
  Vector out(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) {
    out[i] = gamma * (baseline_pref[i] - pi[i]);
  }
  return {std::move(out)};
}

PreferenceState composite_update(const PreferenceState& pref,
                                 std::span<const double> item, double rating,
                                 double expected_rating,
                                 const DynamicsConfig& cfg, RngStream& rng) {
  require_same_dim(pref.pi, item, "composite_update");
  PreferenceState next = pref;
  if (cfg.gamma_me > 0.0) {
    add_into(next.pi, mere_exposure_delta(pref.pi, item, cfg.gamma_me).vector);
  }
  if (cfg.gamma_oc > 0.0) {
    const double s = surprise(expected_rating, rating, cfg);
    add_into(next.pi,
             operant_conditioning_delta(pref.pi, item, s, cfg.gamma_oc).vector);
  }
  if (cfg.gamma_ha > 0.0) {
    add_into(next.pi,
             hedonic_adaptation_delta(pref.pi, pref.baseline, cfg.gamma_ha).vector);
  }
  if (cfg.pref_noise_std > 0.0) {
    for (auto& x : next.pi) x += rng.gaussian(0.0, cfg.pref_noise_std);
  }
  return next;
}

PreferenceState composite_update(const PreferenceState& pref,
                                 std::span<const double> item, double rating,
                                 const InteractionHistory& history,
                                 const DynamicsConfig& cfg, RngStream& rng) {
  const double expected =
      cfg.gamma_oc > 0.0 ? discounted_baseline(history, cfg.discount_delta) : 0.0;
  return composite_update(pref, item, rating, expected, cfg, rng);
}

}  // namespace prefdyn
