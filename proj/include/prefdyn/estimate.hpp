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

#ifndef PREFDYN_ESTIMATE_HPP
#define PREFDYN_ESTIMATE_HPP

#include <span>

#include "prefdyn/core.hpp"

namespace prefdyn {

/// Online estimate u_t of the user preference, trained by gradient steps on
/// l(u) = 0.5 * ((r - <u, v>)^2 + eta * |u|^2).
struct EstimatorState {
  Vector u;
  double alpha = 0.05;
  double eta = 0.01;

  void validate() const;
};

/// Per-interaction squared loss with L2 penalty; used by the gradient check.
double ogd_loss(std::span<const double> u, std::span<const double> item,
                double observed_rating, double eta);

/// u' = (1 - alpha * eta) u + alpha (r - s) v, where s = <u, v> is the score
/// the caller already computed for selection.
EstimatorState ogd_update(const EstimatorState& state,
                          std::span<const double> item, double observed_rating,
                          double predicted_score);

}  // namespace prefdyn

#endif  // PREFDYN_ESTIMATE_HPP
