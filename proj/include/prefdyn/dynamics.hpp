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

#ifndef PREFDYN_DYNAMICS_HPP
#define PREFDYN_DYNAMICS_HPP

#include <span>

#include "prefdyn/core.hpp"

namespace prefdyn {

/// Which way the surprise term points. `narrative`: a rating above the
/// expected level is positive surprise. `literal`: expected minus rating.
enum class SurpriseSign { narrative, literal };

/// `scaled_arctan` maps through (2/pi) * atan into (-1, 1); `raw_arctan`
/// uses atan directly, range (-pi/2, pi/2).
enum class SurpriseScale { scaled_arctan, raw_arctan };

struct DynamicsConfig {
  double gamma_me = 0.0;
  double gamma_oc = 0.0;
  double gamma_ha = 0.0;
  double discount_delta = 0.9;
  double pref_noise_std = 0.01;
  SurpriseSign surprise_sign = SurpriseSign::narrative;
  SurpriseScale surprise_scale = SurpriseScale::scaled_arctan;

  /// Throws ConfigError unless every gamma and delta is in [0, 1], the gammas
  /// sum to at most 1, and the noise scale is non-negative.
  void validate() const;
  bool operator==(const DynamicsConfig&) const = default;
};

/// One additive contribution pi_{t+1} - pi_t.
struct PreferenceDelta {
  Vector vector;
};

PreferenceDelta mere_exposure_delta(std::span<const double> pi,
                                    std::span<const double> item, double gamma);

/// Discount-weighted mean of past observed ratings: weight delta^k on the
/// rating k steps back. Empty history gives 0; delta == 0 gives the most
/// recent rating. Evaluates the sum directly (O(history)).
double discounted_baseline(const InteractionHistory& history, double delta);

/// Incremental form of discounted_baseline for use inside the simulation
/// loop: O(1) per step.
class DiscountedAverage {
 public:
  explicit DiscountedAverage(double delta);

  /// Expected rating given everything pushed so far.
  double value() const;
  void push(double rating);

 private:
  double delta_;
  double weighted_sum_ = 0.0;
  double weight_total_ = 0.0;
  double last_ = 0.0;
  bool any_ = false;
};

double surprise(double baseline, double current_rating,
                const DynamicsConfig& cfg);

/// gamma * |surp| * (sgn(surp) * item - pi), with sgn(0) = 0.
PreferenceDelta operant_conditioning_delta(std::span<const double> pi,
                                           std::span<const double> item,
                                           double surp, double gamma);

PreferenceDelta hedonic_adaptation_delta(std::span<const double> pi,
                                         std::span<const double> baseline_pref,
                                         double gamma);

/// Applies the weighted sum of the three effects and then preference noise.
/// `expected_rating` is the discounted baseline of the history *before* the
/// current interaction; `rating` is the current observed rating.
PreferenceState composite_update(const PreferenceState& pref,
                                 std::span<const double> item, double rating,
                                 double expected_rating,
                                 const DynamicsConfig& cfg, RngStream& rng);

/// Convenience overload computing the expected rating from `history`.
PreferenceState composite_update(const PreferenceState& pref,
                                 std::span<const double> item, double rating,
                                 const InteractionHistory& history,
                                 const DynamicsConfig& cfg, RngStream& rng);

}  // namespace prefdyn

#endif  // PREFDYN_DYNAMICS_HPP
