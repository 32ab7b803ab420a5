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

#include <string>

#include "doctest.h"
#include "prefdyn/manifest.hpp"

using namespace prefdyn;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_manifest(text);
  } catch (const ManifestError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal manifest takes library defaults") {
  const auto m = parse_manifest(
      "[simulation]\nn = 100\nd = 4\nsteps = 50\n[policy]\nkind = greedy\n");
  SimulationConfig want;
  want.n = 100;
  want.d = 4;
  want.steps = 50;
  want.policy.kind = PolicyKind::greedy;
  CHECK(m.base == want);
  CHECK(m.base.dynamics.discount_delta == 0.9);
  CHECK(m.base.dynamics.pref_noise_std == 0.01);
  CHECK(m.base.rating_noise_std == 0.05);
  CHECK(m.base.estimator.alpha == 0.05);
  CHECK(m.base.estimator.eta == 0.01);
  CHECK(m.base.policy.constant_index == 0);
  CHECK(m.base.baseline_mode == BaselineMode::initial);
  CHECK(m.seeds == std::vector<std::uint64_t>{0});
  CHECK(m.outputs == OutputOptions{});
  CHECK(m.name == "experiment");
}

TEST_CASE("unknown keys and bad values name the key and line") {
  const auto typo = error_of("name = x\n\n[dynamics]\ngamme_me = 0.1\n");
  CHECK(typo.find("gamme_me") != std::string::npos);
  CHECK(typo.find("line 4") != std::string::npos);

  CHECK(error_of("[dynamic]\n").find("dynamic") != std::string::npos);
  CHECK(error_of("[policy]\nbeta = fast\n").find("policy.beta") != std::string::npos);
  CHECK(error_of("[policy]\nkind = softmaxx\n").find("softmaxx") != std::string::npos);
  CHECK(error_of("[simulation]\nn = -3\n").find("simulation.n") != std::string::npos);
  CHECK(error_of("[simulation]\nn = 3\nn = 4\n").find("duplicate") != std::string::npos);
  CHECK(error_of("[sweep]\nbeta = 1, 2\n").find("beta") != std::string::npos);
  CHECK(error_of("[sweep]\npolicy.beta = 1, x\n").find("line 2") != std::string::npos);
  CHECK(error_of("[variant.a]\npolicy.kind = nope\n").find("nope") != std::string::npos);
  CHECK(error_of("seeds = 5..2\n").find("seeds") != std::string::npos);
  CHECK(error_of("just text\n").find("line 1") != std::string::npos);
  CHECK(error_of("[output]\nprominence = 1.5\n").find("prominence") != std::string::npos);
  CHECK(error_of("[estimator]\nmode = psychic\n").find("estimator.mode") !=
        std::string::npos);
}

TEST_CASE("seed lists and ranges") {
  CHECK(parse_manifest("seeds = 3\n").seeds == std::vector<std::uint64_t>{3});
  CHECK(parse_manifest("seeds = 1..4, 9\n").seeds ==
        std::vector<std::uint64_t>{1, 2, 3, 4, 9});
  CHECK(parse_manifest("seeds = 7, 2\n").seeds == std::vector<std::uint64_t>{7, 2});
}

TEST_CASE("baseline forms") {
  CHECK(parse_manifest("[simulation]\nbaseline = origin\n").base.baseline_mode ==
        BaselineMode::origin);
  const auto m = parse_manifest("[simulation]\nd = 3\nbaseline = 1 -2.5 0\n");
  CHECK(m.base.baseline_mode == BaselineMode::given);
  CHECK(m.base.baseline == Vector{1, -2.5, 0});
}

TEST_CASE("serialize then parse is the identity") {
  const char* text = R"(# comment line
name = demo
seeds = 1..3, 10
max_runs = 500

[simulation]
n = 200
d = 3
sigma = 0.7
steps = 123
rating_noise_std = 0.1
baseline = 0.1 0.2 0.30000000000000004

[dynamics]
gamma_me = 0.05   # inline comment
gamma_oc = 0.1
surprise_sign = literal
surprise_scale = raw_arctan

[policy]
kind = persistent_softmax
persistent_norm_scaling = false
momentum = raw

[estimator]
mode = oracle
init = truth

[output]
trajectory = false
entropy_window = 100
plot_stride = 7

[sweep]
policy.beta = 1, 2.5
dynamics.discount_delta = 0.5, 0.99

[variant.first]
simulation.n = 300

[variant.second]
dynamics.gamma_ha = 0.01
)";
  const auto m = parse_manifest(text);
  const auto again = parse_manifest(serialize_manifest(m));
  CHECK(again == m);
  CHECK(serialize_manifest(again) == serialize_manifest(m));
  CHECK(m.base.baseline[2] == 0.30000000000000004);

  const auto defaults = parse_manifest("");
  CHECK(parse_manifest(serialize_manifest(defaults)) == defaults);
}

TEST_CASE("grid expansion") {
  auto m = parse_manifest(R"(
seeds = 1, 2
[sweep]
policy.beta = 1, 2
dynamics.gamma_me = 0, 0.1, 0.2
[variant.a]
policy.kind = softmax
[variant.b]
policy.kind = persistent_softmax
)");
  const auto cells = expand_grid(m);
  REQUIRE(cells.size() == 12);
  CHECK(cells[0].label == "a;policy.beta=1;dynamics.gamma_me=0");
  CHECK(cells[1].label == "a;policy.beta=1;dynamics.gamma_me=0.1");
  CHECK(cells[3].config.policy.beta == 2);
  CHECK(cells[5].config.dynamics.gamma_me == 0.2);
  CHECK(cells[6].config.policy.kind == PolicyKind::persistent_softmax);
  CHECK(cells[11].label == "b;policy.beta=2;dynamics.gamma_me=0.2");

  CHECK(expand_grid(parse_manifest("")).size() == 1);
  CHECK(expand_grid(parse_manifest(""))[0].label == "base");

  m.max_runs = 23;
  CHECK_THROWS_AS(expand_grid(m), ManifestError);
  m.max_runs = 24;
  CHECK_NOTHROW(expand_grid(m));

  const auto invalid = parse_manifest("[sweep]\ndynamics.gamma_me = 0.5, 0.9\n"
                                      "[dynamics]\ngamma_oc = 0.3\n");
  CHECK_THROWS_AS(expand_grid(invalid), ManifestError);
}

TEST_CASE("steps override reaches variants and sweeps") {
  auto m = parse_manifest(R"(
[simulation]
steps = 1000
[sweep]
simulation.steps = 10, 20
[variant.long]
simulation.steps = 5000
)");
  override_steps(m, 7);
  for (const auto& cell : expand_grid(m)) CHECK(cell.config.steps == 7);
}

TEST_CASE("single-run manifest reproduces a grid cell") {
  const auto m = parse_manifest(R"(
name = parent
seeds = 1..5
[sweep]
policy.beta = 1, 3
[variant.x]
dynamics.gamma_me = 0.1
)");
  const auto cells = expand_grid(m);
  const auto single = single_run_manifest(m, cells[1], 4);
  const auto reparsed = parse_manifest(serialize_manifest(single));
  CHECK(reparsed.seeds == std::vector<std::uint64_t>{4});
  const auto again = expand_grid(reparsed);
  REQUIRE(again.size() == 1);
  auto want = cells[1].config;
  want.seed = 0;
  CHECK(again[0].config == want);
}

TEST_CASE("every config key is accepted by the sweep section") {
  for (const auto& key : config_keys()) {
    CHECK(key.find('.') != std::string::npos);
  }
  CHECK(config_keys().size() >= 20);
}
