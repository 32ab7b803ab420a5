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

#ifndef PREFDYN_CORE_HPP
#define PREFDYN_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prefdyn {

using Vector = std::vector<double>;

/// Raised for invalid user-supplied configuration (bad sizes, ranges, keys).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a caller breaks a function precondition (e.g. dimension
/// mismatch between two vectors).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Small dense-vector helpers. Latent dimensions here are tiny (d <= ~64), so
// plain std::vector<double> with free functions is all we need.

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
double distance(std::span<const double> a, std::span<const double> b);
bool all_finite(std::span<const double> a);
void require_same_dim(std::span<const double> a, std::span<const double> b,
                      std::string_view what);

// ---------------------------------------------------------------------------

/// Deterministic random stream keyed by (seed, label). Two streams built from
/// the same pair produce the same sequence; streams with different labels are
/// statistically independent, so enabling one noise source never shifts the
/// draws of another.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string label);

  std::uint64_t seed() const { return seed_; }
  const std::string& label() const { return label_; }

  double gaussian(double mean, double stddev);
  double uniform01();
  /// Uniform integer in [0, n). n must be >= 1.
  std::size_t uniform_index(std::size_t n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::string label_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Mixes a user seed with a stream label into the engine's starting state.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view label);

// ---------------------------------------------------------------------------

/// The fixed set of item vectors. Immutable after construction.
class ItemCatalog {
 public:
  explicit ItemCatalog(std::vector<Vector> items);

  std::size_t size() const { return items_.size(); }
  std::size_t dim() const { return dim_; }
  std::span<const double> item(std::size_t i) const;
  const std::vector<Vector>& items() const { return items_; }
  double max_norm() const;

 private:
  std::vector<Vector> items_;
  std::size_t dim_;
};

/// True user preference pi_t plus the fixed hedonic-adaptation baseline.
struct PreferenceState {
  Vector pi;
  Vector baseline;

  void validate() const;
};

struct InteractionRecord {
  std::int64_t step = 0;
  std::size_t item_index = 0;
  double rating = 0.0;
  double noiseless_rating = 0.0;
};

/// Ordered interaction records; steps are contiguous starting at 1.
class InteractionHistory {
 public:
  void append(const InteractionRecord& record);
  const std::vector<InteractionRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

 private:
  std::vector<InteractionRecord> records_;
};

ItemCatalog sample_catalog(std::size_t n, std::size_t d, double sigma,
                           RngStream& rng);

/// Samples pi_0; the baseline defaults to pi_0.
PreferenceState sample_initial_preference(std::size_t d, double sigma,
                                          RngStream& rng);

struct Rating {
  double observed;
  double noiseless;
};

/// Linear rating <pi, item> plus Gaussian(0, noise_std) noise. No draw is
/// taken when noise_std == 0.
Rating rate(std::span<const double> pi, std::span<const double> item,
            double noise_std, RngStream& rng);

inline Rating rate(const PreferenceState& pref, std::span<const double> item,
                   double noise_std, RngStream& rng) {
  return rate(pref.pi, item, noise_std, rng);
}

}  // namespace prefdyn

#endif  // PREFDYN_CORE_HPP
