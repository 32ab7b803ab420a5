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

#ifndef PREFDYN_METRICS_HPP
#define PREFDYN_METRICS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "prefdyn/core.hpp"
#include "prefdyn/engine.hpp"

namespace prefdyn {

/// Raised by max_entropy_distribution when no finite-beta distribution meets
/// the engagement target.
class InfeasibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Engagement and diversity

/// Means of each length-`window` run of consecutive values; the window is
/// clamped to the series length. Empty input throws.
Vector sliding_mean(std::span<const double> values, std::size_t window);

struct EngagementResult {
  Vector series;            // sliding mean of observed ratings
  Vector noiseless_series;  // same over noiseless ratings
  double mean = 0.0;
  double noiseless_mean = 0.0;
};

EngagementResult engagement(const TrajectoryLog& log, std::size_t window);

/// Shannon entropy (nats) of the empirical distribution of `items`.
double selection_entropy(std::span<const std::size_t> items);

struct EntropyResult {
  Vector series;  // one value per sliding window
  double full = 0.0;
};

/// Entropy of item-selection frequencies in each sliding window, plus the
/// entropy of the whole run. `window` empty means one window over the run.
EntropyResult consumption_entropy(const TrajectoryLog& log,
                                  std::optional<std::size_t> window);

Vector preference_magnitude(const TrajectoryLog& log);

// ---------------------------------------------------------------------------
// Oscillations

struct OscillationReport {
  std::size_t peak_count = 0;
  std::vector<std::size_t> peak_times;
  Vector prominences;
  double median_period = 0.0;  // NaN when fewer than two peaks
  double amplitude = 0.0;      // median peak prominence, 0 without peaks
};

/// Peak prominence of every local maximum (plateaus count once, at their
/// middle): height above the higher of the two minima reached before the
/// series climbs above the peak on either side.
std::vector<std::pair<std::size_t, double>> peak_prominences(
    std::span<const double> series);

/// Keeps peaks whose prominence exceeds prominence_fraction * (max - min).
OscillationReport detect_oscillations(std::span<const double> series,
                                      double prominence_fraction);

double median(Vector values);

// ---------------------------------------------------------------------------
// Boundedness

struct HullBoundCheck {
  bool pass = false;
  double max_norm = 0.0;
  double bound = 0.0;
};

/// Checks max_t |pi_t| <= max(|pi_0|, |baseline|, max_i |v_i|) + 1e-9. Only
/// meaningful for runs without preference noise and with surprise in [-1, 1];
/// other logs throw ContractViolation.
HullBoundCheck check_convex_hull_bound(const TrajectoryLog& log,
                                       const ItemCatalog& catalog);

// ---------------------------------------------------------------------------
// Maximum-entropy distribution under an engagement constraint

struct MaxEntropyResult {
  Vector probabilities;
  double beta = 0.0;
  double achieved_mean = 0.0;
  double entropy = 0.0;
};

/// Finds p_i proportional to exp(beta * r_i) with sum p_i r_i = target by
/// bisection on beta.
MaxEntropyResult max_entropy_distribution(std::span<const double> ratings,
                                          double target);

double shannon_entropy(std::span<const double> probs);

// ---------------------------------------------------------------------------
// Engagement / diversity dominance

struct TradeoffPoint {
  std::string label;
  double engagement = 0.0;
  double entropy = 0.0;
};

struct DominanceReport {
  std::vector<std::vector<std::size_t>> dominated_by;  // per input point
  std::vector<std::size_t> frontier;                   // non-dominated indices
};

bool strictly_dominates(const TradeoffPoint& a, const TradeoffPoint& b);

DominanceReport pareto_compare(const std::vector<TradeoffPoint>& points);

// ---------------------------------------------------------------------------

struct SummaryOptions {
  std::size_t entropy_window = 500;
  std::size_t engagement_window = 500;
  double prominence_fraction = 0.5;

  bool operator==(const SummaryOptions&) const = default;
};

struct MetricSummary {
  double mean_engagement = 0.0;
  double mean_noiseless_engagement = 0.0;
  double consumption_entropy = 0.0;
  double mean_magnitude = 0.0;
  double final_magnitude = 0.0;
  std::size_t peak_count = 0;
  double median_period = 0.0;
  double amplitude = 0.0;
  Vector entropy_series;
  Vector magnitude_series;
  Vector engagement_series;
};

/// Scalars are NaN for a zero-step run (no interactions to average).
MetricSummary summarize(const TrajectoryLog& log, const SummaryOptions& opts);

}  // namespace prefdyn

#endif  // PREFDYN_METRICS_HPP
