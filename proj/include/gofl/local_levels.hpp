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

#ifndef GOFL_LOCAL_LEVELS_HPP_
#define GOFL_LOCAL_LEVELS_HPP_

// Local levels: the per-rank marginal crossing probabilities of a test.
// For a one-sided test the local level of rank i is
//   alpha_{i,n} = P(U_{i:n} <= lower_i),
// the order-statistic c.d.f. at the critical value; a two-sided test
// adds the upper-tail share
//   alpha=_{i,n} = P(U_{i:n} <= lower_i) + P(U_{i:n} >= upper_i).
// Local levels expose where a global test spends its level across the
// sample range, which is what distinguishes the families implemented
// here: KS concentrates its level in the middle ranks (zero local level
// near the edges), higher criticism spends heavily on the extreme
// ranks, and equal-local-level tests by construction spread it evenly.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gofl/special_functions.hpp"
#include "gofl/test_families.hpp"

namespace gofl {

struct LocalLevelProfile {
  std::int64_t n = 0;
  // alpha_{i,n} at index i-1.
  std::vector<double> one_sided;
  // alpha=_{i,n} at index i-1; empty for a one-sided profile.
  std::vector<double> two_sided;
};

namespace detail {

inline void check_profile_input(const TestDefinition& test, const char* who) {
  if (test.n < 1) {
    throw std::invalid_argument(std::string(who) + ": n must be >= 1");
  }
  if (test.lower.empty()) {
    throw std::invalid_argument(std::string(who) +
                                ": test has no lower boundary");
  }
  if (static_cast<std::int64_t>(test.lower.size()) != test.n) {
    throw std::invalid_argument(std::string(who) +
                                ": lower boundary length differs from n");
  }
}

}  // namespace detail

// Per-rank lower-crossing probabilities of the test's lower boundary.
// Zero critical values give exactly zero local levels.
inline LocalLevelProfile local_levels_one_sided(const TestDefinition& test) {
  detail::check_profile_input(test, "local_levels_one_sided");
  LocalLevelProfile profile;
  profile.n = test.n;
  profile.one_sided.resize(test.lower.size());
  for (std::int64_t i = 1; i <= test.n; ++i) {
    profile.one_sided[static_cast<std::size_t>(i - 1)] =
        beta_cdf(i, test.n, test.lower[static_cast<std::size_t>(i - 1)]);
  }
  return profile;
}

// Two-sided local levels.  The upper-tail share is evaluated directly
// as an upper tail (never as 1 - cdf), so tiny contributions keep full
// precision.  The one-sided entries of the result hold the lower-tail
// shares alone.
inline LocalLevelProfile local_levels_two_sided(const TestDefinition& test) {
  detail::check_profile_input(test, "local_levels_two_sided");
  if (!test.two_sided()) {
    throw std::invalid_argument(
        "local_levels_two_sided: test has no upper boundary");
  }
  if (test.upper.size() != test.lower.size()) {
    throw std::invalid_argument(
        "local_levels_two_sided: upper boundary length differs from n");
  }
  LocalLevelProfile profile;
  profile.n = test.n;
  profile.one_sided.resize(test.lower.size());
  profile.two_sided.resize(test.lower.size());
  for (std::int64_t i = 1; i <= test.n; ++i) {
    const double lower_tail =
        beta_cdf(i, test.n, test.lower[static_cast<std::size_t>(i - 1)]);
    const double upper_tail =
        beta_sf(i, test.n, test.upper[static_cast<std::size_t>(i - 1)]);
    profile.one_sided[static_cast<std::size_t>(i - 1)] = lower_tail;
    profile.two_sided[static_cast<std::size_t>(i - 1)] =
        lower_tail + upper_tail;
  }
  return profile;
}

// Limit of the KS local level along ranks i_n with i_n/n -> zeta:
//   1 - Phi( sqrt( -log(alpha) / (2 zeta (1 - zeta)) ) ).
// Symmetric in zeta <-> 1 - zeta and maximal at zeta = 1/2, where it
// equals 1 - Phi(sqrt(-2 log alpha)).
inline double ks_asymptotic_local_level(double alpha, double zeta) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument(
        "ks_asymptotic_local_level: alpha outside (0, 1)");
  }
  if (!(zeta > 0.0) || !(zeta < 1.0)) {
    throw std::invalid_argument(
        "ks_asymptotic_local_level: zeta outside (0, 1)");
  }
  return normal_sf(
      std::sqrt(-std::log(alpha) / (2.0 * zeta * (1.0 - zeta))));
}

}  // namespace gofl

#endif  // GOFL_LOCAL_LEVELS_HPP_
