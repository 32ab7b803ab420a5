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

#include <cmath>

#include "doctest.h"
#include "prefdyn/engine.hpp"
#include "prefdyn/metrics.hpp"
#include "prefdyn/sweep.hpp"

using namespace prefdyn;

namespace {

SimulationConfig small_config() {
  SimulationConfig cfg;
  cfg.n = 50;
  cfg.d = 3;
  cfg.steps = 200;
  cfg.seed = 42;
  cfg.dynamics.gamma_me = 0.05;
  cfg.dynamics.gamma_oc = 0.05;
  cfg.dynamics.gamma_ha = 0.01;
  cfg.policy.kind = PolicyKind::softmax;
  cfg.policy.beta = 2;
  return cfg;
}

void check_same_log(const TrajectoryLog& a, const TrajectoryLog& b) {
  CHECK(a.pi == b.pi);
  CHECK(a.u == b.u);
  CHECK(a.items == b.items);
  CHECK(a.ratings == b.ratings);
  CHECK(a.noiseless_ratings == b.noiseless_ratings);
  CHECK(a.pi_norm == b.pi_norm);
}

bool same_summary(const MetricSummary& a, const MetricSummary& b) {
  auto eq = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
  return eq(a.mean_engagement, b.mean_engagement) &&
         eq(a.consumption_entropy, b.consumption_entropy) &&
         eq(a.mean_magnitude, b.mean_magnitude) && a.peak_count == b.peak_count &&
         eq(a.median_period, b.median_period) && a.entropy_series == b.entropy_series &&
         a.magnitude_series == b.magnitude_series &&
         a.engagement_series == b.engagement_series;
}

}  // namespace

TEST_CASE("zero steps logs only the initial snapshot") {
  auto cfg = small_config();
  cfg.steps = 0;
  const auto log = run_simulation(cfg);
  CHECK(log.pi.size() == 1);
  CHECK(log.u.size() == 1);
  CHECK(log.pi_norm.size() == 1);
  CHECK(log.steps() == 0);
  CHECK(log.ratings.empty());
}

TEST_CASE("log shape") {
  for (auto kind : {PolicyKind::uniform, PolicyKind::constant, PolicyKind::greedy,
                    PolicyKind::softmax, PolicyKind::persistent_softmax}) {
    auto cfg = small_config();
    cfg.policy.kind = kind;
    const auto log = run_simulation(cfg);
    CHECK(log.pi.size() == 201);
    CHECK(log.u.size() == 201);
    CHECK(log.pi_norm.size() == 201);
    CHECK(log.items.size() == 200);
    CHECK(log.ratings.size() == 200);
    CHECK(log.noiseless_ratings.size() == 200);
    CHECK(log.selected_scores.size() == 200);
    for (std::size_t t = 0; t <= 200; ++t) CHECK(log.pi_norm[t] == norm(log.pi[t]));
    for (std::size_t t = 0; t < 200; ++t) {
      CHECK(log.noiseless_ratings[t] == dot(log.pi[t], log.catalog->item(log.items[t])));
    }
  }
}

TEST_CASE("same config and seed reproduce the run exactly") {
  for (auto kind : {PolicyKind::uniform, PolicyKind::greedy, PolicyKind::softmax,
                    PolicyKind::persistent_softmax}) {
    auto cfg = small_config();
    cfg.policy.kind = kind;
    check_same_log(run_simulation(cfg), run_simulation(cfg));
  }
  auto a = small_config();
  auto b = small_config();
  b.seed = 43;
  CHECK(run_simulation(a).items != run_simulation(b).items);
}

TEST_CASE("static user under greedy selection") {
  auto cfg = small_config();
  cfg.dynamics = DynamicsConfig{};
  cfg.dynamics.pref_noise_std = 0;
  cfg.rating_noise_std = 0;
  cfg.policy.kind = PolicyKind::greedy;
  cfg.steps = 3000;
  const auto log = run_simulation(cfg);
  for (const auto& p : log.pi) CHECK(p == log.pi.front());
  // Once the estimate has settled, the same item is chosen every step.
  for (std::size_t t = 2500; t < 3000; ++t) CHECK(log.items[t] == log.items.back());
}

TEST_CASE("oracle and estimated modes agree when the estimate is exact") {
  auto cfg = small_config();
  cfg.dynamics = DynamicsConfig{};
  cfg.dynamics.pref_noise_std = 0;
  cfg.rating_noise_std = 0;
  cfg.estimator.init = EstimateInit::truth;
  cfg.estimator.eta = 0;
  for (auto kind : {PolicyKind::greedy, PolicyKind::softmax, PolicyKind::uniform}) {
    cfg.policy.kind = kind;
    auto oracle = cfg;
    oracle.estimator.mode = EstimatorMode::oracle;
    const auto a = run_simulation(cfg);
    const auto b = run_simulation(oracle);
    CHECK(a.items == b.items);
    CHECK(a.selected_scores == b.selected_scores);
    CHECK(a.u == b.u);
  }
}

TEST_CASE("oracle mode logs the true preference as the scorer") {
  auto cfg = small_config();
  cfg.estimator.mode = EstimatorMode::oracle;
  const auto log = run_simulation(cfg);
  CHECK(log.u == log.pi);
}

TEST_CASE("random streams are independent per source") {
  auto cfg = small_config();
  cfg.policy.kind = PolicyKind::uniform;
  auto noisier = cfg;
  noisier.dynamics.pref_noise_std = 0.2;
  noisier.rating_noise_std = 0.3;
  const auto a = run_simulation(cfg);
  const auto b = run_simulation(noisier);
  CHECK(a.items == b.items);
  CHECK(a.pi.front() == b.pi.front());
  CHECK(a.u.front() == b.u.front());
  CHECK(a.pi.back() != b.pi.back());
}

TEST_CASE("baseline modes") {
  auto cfg = small_config();
  CHECK(run_simulation(cfg).baseline == run_simulation(cfg).pi.front());
  cfg.baseline_mode = BaselineMode::origin;
  CHECK(run_simulation(cfg).baseline == Vector{0, 0, 0});
  cfg.baseline_mode = BaselineMode::given;
  cfg.baseline = {1, 2, 3};
  CHECK(run_simulation(cfg).baseline == Vector{1, 2, 3});
  cfg.baseline = {1, 2};
  CHECK_THROWS_AS(run_simulation(cfg), ConfigError);
}

TEST_CASE("configuration errors surface before the first step") {
  auto cfg = small_config();
  cfg.dynamics.gamma_me = 0.95;
  CHECK_THROWS_AS(run_simulation(cfg), ConfigError);
  cfg = small_config();
  cfg.steps = -1;
  CHECK_THROWS_AS(run_simulation(cfg), ConfigError);
  cfg = small_config();
  cfg.policy.kind = PolicyKind::constant;
  cfg.policy.constant_index = 50;
  CHECK_THROWS_AS(run_simulation(cfg), ConfigError);
  cfg = small_config();
  cfg.estimator.alpha = 0;
  CHECK_THROWS_AS(run_simulation(cfg), ConfigError);
  cfg = small_config();
  cfg.sigma = 0;
  CHECK_THROWS_AS(run_simulation(cfg), ConfigError);
}

TEST_CASE("non-finite values abort with the step number") {
  auto cfg = small_config();
  cfg.sigma = 1e200;
  try {
    run_simulation(cfg);
    FAIL("expected SimulationError");
  } catch (const SimulationError& e) {
    CHECK(std::string(e.what()).find("step 1") != std::string::npos);
  }
}

TEST_CASE("sweep") {
  auto base = small_config();
  std::vector<SimulationConfig> grid;
  for (double beta : {0.5, 1.0, 3.0}) {
    base.policy.beta = beta;
    grid.push_back(base);
  }
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);

  SUBCASE("one config and seed matches a direct run") {
    const auto rows = run_sweep({grid[0]}, {7}, 1);
    REQUIRE(rows.size() == 1);
    auto cfg = grid[0];
    cfg.seed = 7;
    CHECK(same_summary(*rows[0].summary, summarize(run_simulation(cfg), {})));
  }
  SUBCASE("all rows present in grid-major order, independent of parallelism") {
    const auto serial = run_sweep(grid, seeds, 1);
    const auto parallel = run_sweep(grid, seeds, 8);
    REQUIRE(serial.size() == 60);
    REQUIRE(parallel.size() == 60);
    for (std::size_t k = 0; k < 60; ++k) {
      CHECK(serial[k].config_id == k / 20);
      CHECK(serial[k].seed == seeds[k % 20]);
      CHECK(parallel[k].config_id == serial[k].config_id);
      CHECK(parallel[k].seed == serial[k].seed);
      REQUIRE(serial[k].summary.has_value());
      REQUIRE(parallel[k].summary.has_value());
      CHECK(same_summary(*serial[k].summary, *parallel[k].summary));
    }
  }
  SUBCASE("a failing cell does not stop the others") {
    auto bad = grid[0];
    bad.sigma = 1e200;
    const auto rows = run_sweep({grid[0], bad}, {1, 2}, 2);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].summary.has_value());
    CHECK(rows[1].summary.has_value());
    CHECK_FALSE(rows[2].summary.has_value());
    CHECK(rows[2].error.find("non-finite") != std::string::npos);
    CHECK_FALSE(rows[3].summary.has_value());
  }
  SUBCASE("empty inputs") {
    CHECK_THROWS_AS(run_sweep({}, {1}, 1), ConfigError);
    CHECK_THROWS_AS(run_sweep(grid, {}, 1), ConfigError);
  }
}
