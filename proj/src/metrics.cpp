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

#include "prefdyn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace prefdyn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

Vector sliding_mean(std::span<const double> values, std::size_t window) {
  if (values.empty()) throw ContractViolation("sliding_mean: empty series");
  if (window == 0) throw ContractViolation("sliding_mean: window must be >= 1");
  window = std::min(window, values.size());
  Vector out;
  out.reserve(values.size() - window + 1);
  // Summed fresh per window; an O(1) running sum drifts on long series.
  for (std::size_t start = 0; start + window <= values.size(); ++start) {
    out.push_back(mean_of(values.subspan(start, window)));
  }
  return out;
}

EngagementResult engagement(const TrajectoryLog& log, std::size_t window) {
  if (log.steps() == 0) throw ContractViolation("engagement: log has no interactions");
  EngagementResult r;
  r.series = sliding_mean(log.ratings, window);
  r.noiseless_series = sliding_mean(log.noiseless_ratings, window);
  r.mean = mean_of(log.ratings);
  r.noiseless_mean = mean_of(log.noiseless_ratings);
  return r;
}

double selection_entropy(std::span<const std::size_t> items) {
  if (items.empty()) throw ContractViolation("selection_entropy: empty window");
  std::vector<std::size_t> sorted(items.begin(), items.end());
  std::sort(sorted.begin(), sorted.end());
  const double total = static_cast<double>(sorted.size());
  double h = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double p = static_cast<double>(j - i) / total;
    h -= p * std::log(p);
    i = j;
  }
  return std::max(0.0, h);
}

EntropyResult consumption_entropy(const TrajectoryLog& log,
                                  std::optional<std::size_t> window) {
  if (log.steps() == 0) {
    throw ContractViolation("consumption_entropy: log has no interactions");
  }
  std::span<const std::size_t> items(log.items);
  EntropyResult r;
  r.full = selection_entropy(items);
  if (!window) {
    r.series.push_back(r.full);
    return r;
  }
  if (*window == 0) throw ContractViolation("consumption_entropy: window must be >= 1");
  const std::size_t w = std::min(*window, items.size());
  r.series.reserve(items.size() - w + 1);
  // Counts are maintained incrementally; each window's entropy is then summed
  // over its distinct items (in first-occurrence order, so results are
  // reproducible) rather than updated in place, which would drift.
  const std::size_t n_items = log.catalog ? log.catalog->size()
                                          : *std::max_element(items.begin(), items.end()) + 1;
  std::vector<std::size_t> counts(n_items, 0);
  std::vector<std::size_t> stamp(n_items, 0);
  for (std::size_t k = 0; k < w; ++k) ++counts[items[k]];
  const double total = static_cast<double>(w);
  for (std::size_t start = 0;; ++start) {
    double h = 0.0;
    for (std::size_t k = start; k < start + w; ++k) {
      const std::size_t it = items[k];
      if (stamp[it] == start + 1) continue;
      stamp[it] = start + 1;
      const double p = static_cast<double>(counts[it]) / total;
      h -= p * std::log(p);
    }
    r.series.push_back(std::max(0.0, h));
    if (start + w >= items.size()) break;
    --counts[items[start]];
    ++counts[items[start + w]];
  }
  return r;
}

Vector preference_magnitude(const TrajectoryLog& log) {
  Vector out;
  out.reserve(log.pi.size());
  for (const auto& p : log.pi) out.push_back(norm(p));
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::pair<std::size_t, double>> peak_prominences(
    std::span<const double> x) {
  std::vector<std::pair<std::size_t, double>> peaks;
  const std::size_t n = x.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    if (!(x[i - 1] < x[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && x[j + 1] == x[i]) ++j;
    if (j + 1 >= n || !(x[j + 1] < x[i])) {
      i = j + 1;
      continue;
    }
    const double h = x[i];
    double left_min = h;
    for (std::size_t k = i; k-- > 0;) {
      if (x[k] > h) break;
      left_min = std::min(left_min, x[k]);
    }
    double right_min = h;
    for (std::size_t k = j + 1; k < n; ++k) {
      if (x[k] > h) break;
      right_min = std::min(right_min, x[k]);
    }
    peaks.emplace_back((i + j) / 2, h - std::max(left_min, right_min));
    i = j + 1;
  }
  return peaks;
}

double median(Vector values) {
  if (values.empty()) return kNaN;
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

OscillationReport detect_oscillations(std::span<const double> series,
                                      double prominence_fraction) {
  if (series.size() < 3) {
    throw ContractViolation("detect_oscillations: need at least 3 samples");
  }
  if (!(prominence_fraction > 0.0 && prominence_fraction < 1.0)) {
    throw ContractViolation("detect_oscillations: prominence_fraction must be in (0, 1)");
  }
  const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  const double threshold = prominence_fraction * (*hi - *lo);

  OscillationReport report;
  for (const auto& [t, prom] : peak_prominences(series)) {
    if (prom > threshold) {
      report.peak_times.push_back(t);
      report.prominences.push_back(prom);
    }
  }
  report.peak_count = report.peak_times.size();
  Vector gaps;
  for (std::size_t k = 1; k < report.peak_times.size(); ++k) {
    gaps.push_back(static_cast<double>(report.peak_times[k] - report.peak_times[k - 1]));
  }
  report.median_period = median(gaps);
  report.amplitude = report.prominences.empty() ? 0.0 : median(report.prominences);
  return report;
}

// ---------------------------------------------------------------------------

HullBoundCheck check_convex_hull_bound(const TrajectoryLog& log,
                                       const ItemCatalog& catalog) {
  const auto& dyn = log.config.dynamics;
  if (dyn.pref_noise_std > 0.0) {
    throw ContractViolation(
        "check_convex_hull_bound: bound does not hold under preference noise");
  }
  if (dyn.gamma_oc > 0.0 && dyn.surprise_scale == SurpriseScale::raw_arctan) {
    throw ContractViolation(
        "check_convex_hull_bound: raw arctan surprise can leave [-1, 1]");
  }
  if (log.pi.empty()) throw ContractViolation("check_convex_hull_bound: empty log");
  HullBoundCheck check;
  check.bound = std::max({norm(log.pi.front()), norm(log.baseline), catalog.max_norm()});
  for (const auto& p : log.pi) check.max_norm = std::max(check.max_norm, norm(p));
  check.pass = check.max_norm <= check.bound + 1e-9;
  return check;
}

// ---------------------------------------------------------------------------

double shannon_entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

namespace {

Vector tilted(std::span<const double> r, double beta) {
  const double top = beta >= 0.0 ? *std::max_element(r.begin(), r.end())
                                 : *std::min_element(r.begin(), r.end());
  Vector p(r.size());
  double z = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    p[i] = std::exp(beta * (r[i] - top));
    z += p[i];
  }
  for (auto& x : p) x /= z;
  return p;
}

double tilted_mean(std::span<const double> r, double beta) {
  const Vector p = tilted(r, beta);
  double m = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) m += p[i] * r[i];
  return m;
}

}  // namespace

MaxEntropyResult max_entropy_distribution(std::span<const double> ratings,
                                          double target) {
  if (ratings.empty()) throw ContractViolation("max_entropy_distribution: no ratings");
  if (!all_finite(ratings) || !std::isfinite(target)) {
    throw ContractViolation("max_entropy_distribution: non-finite input");
  }
  const auto [lo_it, hi_it] = std::minmax_element(ratings.begin(), ratings.end());
  const double rmin = *lo_it;
  const double rmax = *hi_it;
  const double uniform_mean = mean_of(ratings);

  auto finish = [&](double beta) {
    MaxEntropyResult out;
    out.beta = beta;
    out.probabilities = tilted(ratings, beta);
    out.achieved_mean = 0.0;
    for (std::size_t i = 0; i < ratings.size(); ++i) {
      out.achieved_mean += out.probabilities[i] * ratings[i];
    }
    out.entropy = shannon_entropy(out.probabilities);
    return out;
  };

  if (target == uniform_mean) return finish(0.0);
  if (!(target > rmin && target < rmax)) {
    throw InfeasibleError("engagement target " + std::to_string(target) +
                          " is outside the open range (" + std::to_string(rmin) +
                          ", " + std::to_string(rmax) + ")");
  }

  // The tilted mean is strictly increasing in beta; grow a bracket, then bisect.
  const double sign = target > uniform_mean ? 1.0 : -1.0;
  double inner = 0.0;
  double outer = sign;
  while ((tilted_mean(ratings, outer) - target) * sign < 0.0) {
    inner = outer;
    outer *= 2.0;
    if (!std::isfinite(outer)) {
      throw InfeasibleError("max_entropy_distribution: bracket diverged");
    }
  }
  double lo = std::min(inner, outer);
  double hi = std::max(inner, outer);
  for (int iter = 0; iter < 2000 && hi - lo > 0.0; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (tilted_mean(ratings, mid) < target) lo = mid;
    else hi = mid;
  }
  const double beta =
      std::abs(tilted_mean(ratings, lo) - target) <= std::abs(tilted_mean(ratings, hi) - target)
          ? lo
          : hi;
  MaxEntropyResult out = finish(beta);
  if (std::abs(out.achieved_mean - target) > 1e-9 * std::max(1.0, std::abs(target))) {
    throw InfeasibleError("max_entropy_distribution: could not meet target to 1e-9");
  }
  return out;
}

// ---------------------------------------------------------------------------

bool strictly_dominates(const TradeoffPoint& a, const TradeoffPoint& b) {
  return a.engagement > b.engagement && a.entropy > b.entropy;
}

DominanceReport pareto_compare(const std::vector<TradeoffPoint>& points) {
  if (points.empty()) throw ContractViolation("pareto_compare: no points");
  DominanceReport report;
  report.dominated_by.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i != j && strictly_dominates(points[j], points[i])) {
        report.dominated_by[i].push_back(j);
      }
    }
    if (report.dominated_by[i].empty()) report.frontier.push_back(i);
  }
  return report;
}

// ---------------------------------------------------------------------------

MetricSummary summarize(const TrajectoryLog& log, const SummaryOptions& opts) {
  MetricSummary s;
  s.magnitude_series = preference_magnitude(log);
  s.mean_magnitude = mean_of(s.magnitude_series);
  s.final_magnitude = s.magnitude_series.back();
  if (log.steps() == 0) {
    s.mean_engagement = kNaN;
    s.mean_noiseless_engagement = kNaN;
    s.consumption_entropy = kNaN;
    s.median_period = kNaN;
    return s;
  }
  const auto eng = engagement(log, opts.engagement_window);
  s.mean_engagement = eng.mean;
  s.mean_noiseless_engagement = eng.noiseless_mean;
  s.engagement_series = eng.series;
  const auto ent = consumption_entropy(log, opts.entropy_window);
  s.consumption_entropy = ent.full;
  s.entropy_series = ent.series;
  if (s.magnitude_series.size() >= 3) {
    const auto osc = detect_oscillations(s.magnitude_series, opts.prominence_fraction);
    s.peak_count = osc.peak_count;
    s.median_period = osc.median_period;
    s.amplitude = osc.amplitude;
  } else {
    s.median_period = kNaN;
  }
  return s;
}

}  // namespace prefdyn
