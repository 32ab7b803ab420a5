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

#include "prefdyn/estimate.hpp"

#include <cmath>

namespace prefdyn {

void EstimatorState::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("estimator alpha must be finite and > 0");
  }
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw ConfigError("estimator eta must be finite and >= 0");
  }
  if (!all_finite(u)) throw ConfigError("estimate has non-finite entries");
}

double ogd_loss(std::span<const double> u, std::span<const double> item,
                double observed_rating, double eta) {
  const double residual = observed_rating - dot(u, item);
  const double sq = norm(u);
  return 0.5 * (residual * residual + eta * sq * sq);
}

EstimatorState ogd_update(const EstimatorState& state,
                          std::span<const double> item, double observed_rating,
                          double predicted_score) {
  require_same_dim(state.u, item, "ogd_update");
  EstimatorState next = state;
  const double shrink = 1.0 - state.alpha * state.eta;
  const double step = state.alpha * (observed_rating - predicted_score);
  for (std::size_t i = 0; i < next.u.size(); ++i) {
    next.u[i] = shrink * state.u[i] + step * item[i];
  }
  return next;
}

}  // namespace prefdyn
