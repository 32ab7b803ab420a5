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

#include "prefdyn/core.hpp"

#include <algorithm>
#include <cmath>

namespace prefdyn {

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

double distance(std::span<const double> a, std::span<const double> b) {
  require_same_dim(a, b, "distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return std::sqrt(s);
}

bool all_finite(std::span<const double> a) {
  return std::all_of(a.begin(), a.end(),
                     [](double x) { return std::isfinite(x); });
}

void require_same_dim(std::span<const double> a, std::span<const double> b,
                      std::string_view what) {
  if (a.size() != b.size()) {
    throw ContractViolation(std::string(what) + ": dimension mismatch (" +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + ")");
  }
}

// ---------------------------------------------------------------------------

std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view label) {
  // FNV-1a over the label, folded into the seed, then one splitmix64 round.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t z = seed ^ h;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::string label)
    : seed_(seed),
      label_(std::move(label)),
      engine_(derive_stream_seed(seed, label_)) {}

double RngStream::gaussian(double mean, double stddev) {
  return mean + stddev * normal_(engine_);
}

double RngStream::uniform01() {
  return std::generate_canonical<double, 53>(engine_);
}

std::size_t RngStream::uniform_index(std::size_t n) {
  if (n == 0) throw ContractViolation("uniform_index: n must be >= 1");
  std::uniform_int_distribution<std::size_t> dist(0, n - 1);
  return dist(engine_);
}

// ---------------------------------------------------------------------------

ItemCatalog::ItemCatalog(std::vector<Vector> items) : items_(std::move(items)) {
  if (items_.empty()) throw ConfigError("catalog must contain at least one item");
  dim_ = items_.front().size();
  if (dim_ == 0) throw ConfigError("item dimension must be >= 1");
  for (const auto& v : items_) {
    if (v.size() != dim_) throw ConfigError("catalog items differ in dimension");
    if (!all_finite(v)) throw ConfigError("catalog item has non-finite entry");
  }
}

std::span<const double> ItemCatalog::item(std::size_t i) const {
  if (i >= items_.size()) {
    throw ContractViolation("item index " + std::to_string(i) +
                            " out of range");
  }
  return items_[i];
}

double ItemCatalog::max_norm() const {
  double m = 0.0;
  for (const auto& v : items_) m = std::max(m, norm(v));
  return m;
}

void PreferenceState::validate() const {
  if (pi.empty()) throw ConfigError("preference dimension must be >= 1");
  if (baseline.size() != pi.size()) {
    throw ConfigError("baseline dimension does not match preference");
  }
  if (!all_finite(pi) || !all_finite(baseline)) {
    throw ConfigError("preference state has non-finite entries");
  }
}

void InteractionHistory::append(const InteractionRecord& record) {
  const std::int64_t expected =
      records_.empty() ? 1 : records_.back().step + 1;
  if (record.step != expected) {
    throw ContractViolation("history steps must be contiguous from 1; got " +
                            std::to_string(record.step) + ", expected " +
                            std::to_string(expected));
  }
  records_.push_back(record);
}

// ---------------------------------------------------------------------------

namespace {

void check_sampling_args(std::size_t n, std::size_t d, double sigma) {
  if (n < 1) throw ConfigError("n must be >= 1");
  if (d < 1) throw ConfigError("d must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("sigma must be finite and > 0");
  }
}

Vector gaussian_vector(std::size_t d, double sigma, RngStream& rng) {
  Vector v(d);
  for (auto& x : v) x = rng.gaussian(0.0, sigma);
  return v;
}

}  // namespace

ItemCatalog sample_catalog(std::size_t n, std::size_t d, double sigma,
                           RngStream& rng) {
  check_sampling_args(n, d, sigma);
  std::vector<Vector> items;
  items.reserve(n);
  for (std::size_t i = 0; i < n; ++i) items.push_back(gaussian_vector(d, sigma, rng));
  return ItemCatalog(std::move(items));
}

PreferenceState sample_initial_preference(std::size_t d, double sigma,
                                          RngStream& rng) {
  check_sampling_args(1, d, sigma);
  PreferenceState state;
  state.pi = gaussian_vector(d, sigma, rng);
  state.baseline = state.pi;
  return state;
}

Rating rate(std::span<const double> pi, std::span<const double> item,
            double noise_std, RngStream& rng) {
  require_same_dim(pi, item, "rate");
  if (!(noise_std >= 0.0)) throw ContractViolation("rate: noise_std must be >= 0");
  const double clean = dot(pi, item);
  const double noise = noise_std > 0.0 ? rng.gaussian(0.0, noise_std) : 0.0;
  return {clean + noise, clean};
}

}  // namespace prefdyn
