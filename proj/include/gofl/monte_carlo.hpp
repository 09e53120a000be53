// Copyright 2026 The gofl Authors
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

#ifndef GOFL_MONTE_CARLO_HPP_
#define GOFL_MONTE_CARLO_HPP_

// Seeded Monte Carlo estimation of a test's global level, for sample
// sizes beyond the exact dynamic program's reach.  Replications are
// organized in fixed-size chunks; each chunk owns a generator derived
// deterministically from (seed, chunk index), so the estimate is
// bit-identical regardless of execution order or thread count.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gofl/test_families.hpp"

namespace gofl {

struct McLevelEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::int64_t rejections = 0;
  std::int64_t reps = 0;
};

namespace detail {

inline constexpr std::int64_t kMcChunkSize = 8192;
inline constexpr std::uint64_t kSeedStride = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// xoshiro256++ with splitmix64 state expansion.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (std::uint64_t& word : state_) word = splitmix64_next(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

// The generator owning chunk k of the replication schedule.
inline Xoshiro256pp chunk_generator(std::uint64_t seed, std::int64_t chunk) {
  return Xoshiro256pp(seed +
                      (static_cast<std::uint64_t>(chunk) + 1) * kSeedStride);
}

// Fills out[0..n-1] with one sorted uniform sample via the
// exponential-spacings construction: n+1 standard exponentials are
// accumulated and the partial sums normalized by the total, giving the
// order statistics directly with no sort.
inline void sorted_uniform_sample(Xoshiro256pp& gen, std::int64_t n,
                                  double* out) {
  double total = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    total += -std::log1p(-gen.uniform01());
    out[i] = total;
  }
  total += -std::log1p(-gen.uniform01());
  if (!(total > 0.0)) {
    // All n+1 exponentials were exactly zero (probability 2^-53(n+1));
    // pin the sample at the origin rather than dividing by zero.
    for (std::int64_t i = 0; i < n; ++i) out[i] = 0.0;
    return;
  }
  const double inv = 1.0 / total;
  for (std::int64_t i = 0; i < n; ++i) out[i] *= inv;
}

}  // namespace detail

// Estimates the global level (rejection probability under the null) of a
// test by simulation: `reps` independent sorted uniform samples, counting
// the fraction that violate the boundaries.  Returns the estimate with
// its binomial standard error.  Deterministic for fixed (seed, reps).
inline McLevelEstimate mc_level_estimate(const TestDefinition& test,
                                         std::int64_t reps,
                                         std::uint64_t seed) {
  if (reps < 1) {
    throw std::invalid_argument("mc_level_estimate: reps must be >= 1");
  }
  if (test.n < 1 ||
      static_cast<std::int64_t>(test.lower.size()) != test.n ||
      (test.two_sided() && test.upper.size() != test.lower.size())) {
    throw std::invalid_argument(
        "mc_level_estimate: malformed test definition");
  }
  const std::int64_t chunks =
      (reps + detail::kMcChunkSize - 1) / detail::kMcChunkSize;
  std::vector<double> sample(static_cast<std::size_t>(test.n));
  std::int64_t rejections = 0;
  for (std::int64_t k = 0; k < chunks; ++k) {
    detail::Xoshiro256pp gen = detail::chunk_generator(seed, k);
    const std::int64_t count =
        std::min<std::int64_t>(detail::kMcChunkSize,
                               reps - k * detail::kMcChunkSize);
    for (std::int64_t r = 0; r < count; ++r) {
      detail::sorted_uniform_sample(gen, test.n, sample.data());
      if (detail::first_violation_sorted(test, sample.data(), test.n) > 0) {
        ++rejections;
      }
    }
  }
  McLevelEstimate result;
  result.rejections = rejections;
  result.reps = reps;
  result.estimate =
      static_cast<double>(rejections) / static_cast<double>(reps);
  result.standard_error = std::sqrt(result.estimate *
                                    (1.0 - result.estimate) /
                                    static_cast<double>(reps));
  return result;
}

}  // namespace gofl

#endif  // GOFL_MONTE_CARLO_HPP_
