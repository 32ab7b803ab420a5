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
#include <numeric>

#include "doctest.h"
#include "prefdyn/core.hpp"

using namespace prefdyn;

TEST_CASE("rng streams are reproducible and separated by label") {
  RngStream a(7, "catalog");
  RngStream b(7, "catalog");
  RngStream c(7, "policy");
  RngStream d(8, "catalog");
  bool differs_label = false;
  bool differs_seed = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.gaussian(0, 1);
    CHECK(x == b.gaussian(0, 1));
    differs_label |= x != c.gaussian(0, 1);
    differs_seed |= x != d.gaussian(0, 1);
  }
  CHECK(differs_label);
  CHECK(differs_seed);
  CHECK(derive_stream_seed(1, "a") != derive_stream_seed(1, "b"));
  CHECK_THROWS_AS(a.uniform_index(0), ContractViolation);
}

TEST_CASE("sample_catalog") {
  SUBCASE("same seed gives the same catalog") {
    RngStream r1(7, "catalog");
    RngStream r2(7, "catalog");
    const auto c1 = sample_catalog(3, 2, 1.0, r1);
    const auto c2 = sample_catalog(3, 2, 1.0, r2);
    CHECK(c1.items() == c2.items());
    CHECK(c1.size() == 3);
    CHECK(c1.dim() == 2);
  }
  SUBCASE("invalid arguments") {
    RngStream r(1, "catalog");
    CHECK_THROWS_AS(sample_catalog(3, 2, 0.0, r), ConfigError);
    CHECK_THROWS_AS(sample_catalog(3, 2, -1.0, r), ConfigError);
    CHECK_THROWS_AS(sample_catalog(0, 2, 1.0, r), ConfigError);
    CHECK_THROWS_AS(sample_catalog(3, 0, 1.0, r), ConfigError);
  }
  SUBCASE("per-coordinate spread matches sigma") {
    RngStream r(11, "catalog");
    const auto c = sample_catalog(5000, 8, 1.0, r);
    for (std::size_t j = 0; j < 8; ++j) {
      double s = 0, s2 = 0;
      for (const auto& v : c.items()) {
        s += v[j];
        s2 += v[j] * v[j];
      }
      const double mean = s / 5000;
      const double sd = std::sqrt(s2 / 5000 - mean * mean);
      CHECK(std::abs(sd - 1.0) < 0.05);
    }
  }
}

TEST_CASE("item catalog validation") {
  CHECK_THROWS_AS(ItemCatalog({}), ConfigError);
  CHECK_THROWS_AS(ItemCatalog({{1.0, 2.0}, {1.0}}), ConfigError);
  CHECK_THROWS_AS(ItemCatalog({{1.0, NAN}}), ConfigError);
  CHECK_THROWS_AS(ItemCatalog(std::vector<Vector>{Vector{}}), ConfigError);
  const ItemCatalog c({{3.0, 4.0}, {0.0, 1.0}});
  CHECK(c.max_norm() == 5.0);
  CHECK_THROWS_AS(c.item(2), ContractViolation);
}

TEST_CASE("sample_initial_preference") {
  RngStream r1(3, "preference");
  RngStream r2(3, "preference");
  const auto p1 = sample_initial_preference(2, 1.0, r1);
  const auto p2 = sample_initial_preference(2, 1.0, r2);
  CHECK(p1.pi == p2.pi);
  CHECK(p1.baseline == p1.pi);

  double total = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    RngStream r(seed, "preference");
    const auto p = sample_initial_preference(2, 1.0, r);
    total += p.pi[0] * p.pi[0] + p.pi[1] * p.pi[1];
  }
  CHECK(std::abs(total / 10000 - 2.0) < 0.1);
}

TEST_CASE("rate") {
  RngStream r(1, "rating-noise");
  SUBCASE("inner product without noise") {
    const auto out = rate(Vector{1, 2}, Vector{3, 1}, 0.0, r);
    CHECK(out.observed == 5.0);
    CHECK(out.noiseless == 5.0);
  }
  SUBCASE("zero item gives pure noise") {
    RngStream ref(1, "rating-noise");
    const auto out = rate(Vector{1, 2}, Vector{0, 0}, 0.05, r);
    CHECK(out.noiseless == 0.0);
    CHECK(out.observed == ref.gaussian(0.0, 0.05));
  }
  SUBCASE("noise has the configured spread") {
    std::vector<double> eps;
    for (int i = 0; i < 10000; ++i) {
      const auto out = rate(Vector{0.3, -1.2}, Vector{2.0, 0.5}, 0.05, r);
      eps.push_back(out.observed - out.noiseless);
    }
    const double mean = std::accumulate(eps.begin(), eps.end(), 0.0) / eps.size();
    double ss = 0;
    for (double e : eps) ss += (e - mean) * (e - mean);
    CHECK(std::abs(std::sqrt(ss / (eps.size() - 1)) - 0.05) < 0.0025);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(rate(Vector{1, 2}, Vector{1, 2, 3}, 0.0, r), ContractViolation);
    CHECK_THROWS_AS(rate(Vector{1, 2}, Vector{1, 2}, -0.1, r), ContractViolation);
  }
  SUBCASE("noiseless rating is bilinear") {
    RngStream g(5, "test");
    for (int k = 0; k < 200; ++k) {
      Vector p{g.gaussian(0, 1), g.gaussian(0, 1), g.gaussian(0, 1)};
      Vector v{g.gaussian(0, 1), g.gaussian(0, 1), g.gaussian(0, 1)};
      Vector w{g.gaussian(0, 1), g.gaussian(0, 1), g.gaussian(0, 1)};
      const double a = g.gaussian(0, 3);
      Vector ap = p, vw = v;
      for (int j = 0; j < 3; ++j) {
        ap[j] *= a;
        vw[j] += w[j];
      }
      CHECK(std::abs(rate(ap, v, 0, r).observed - a * rate(p, v, 0, r).observed) < 1e-12);
      CHECK(std::abs(rate(p, vw, 0, r).observed -
                     (rate(p, v, 0, r).observed + rate(p, w, 0, r).observed)) < 1e-12);
    }
  }
}

TEST_CASE("interaction history requires contiguous steps") {
  InteractionHistory h;
  CHECK_THROWS_AS(h.append({2, 0, 1.0, 1.0}), ContractViolation);
  h.append({1, 0, 1.0, 1.0});
  h.append({2, 0, 1.0, 1.0});
  CHECK_THROWS_AS(h.append({2, 0, 1.0, 1.0}), ContractViolation);
  CHECK(h.size() == 2);
}

TEST_CASE("preference state validation") {
  CHECK_NOTHROW(PreferenceState{{1, 2}, {0, 0}}.validate());
  CHECK_THROWS_AS((PreferenceState{{1, 2}, {0}}.validate()), ConfigError);
  CHECK_THROWS_AS((PreferenceState{{1, INFINITY}, {0, 0}}.validate()), ConfigError);
}
