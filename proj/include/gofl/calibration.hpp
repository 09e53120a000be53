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

#ifndef GOFL_CALIBRATION_HPP_
#define GOFL_CALIBRATION_HPP_

// Exact-level calibration: root-find the family parameter (KS scale c,
// HC threshold d, or the common local level alpha_loc) so that the
// test's exact global level equals a requested alpha.  The exact level
// of a candidate comes from the boundary-crossing dynamic program; the
// solver is plain bisection, run only after verifying that the level is
// actually bracketed in the documented monotone direction.  A seeded
// Monte Carlo variant covers sizes beyond the exact engine's reach.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "gofl/boundary_crossing.hpp"
#include "gofl/monte_carlo.hpp"
#include "gofl/test_families.hpp"

namespace gofl {

struct CalibrationResult {
  Family family = Family::kCustom;
  std::int64_t n = 0;
  double alpha = 0.0;
  double parameter = 0.0;
  double achieved_level = 0.0;
  int iterations = 0;
  double bracket_width = 0.0;
};

struct BonferroniBounds {
  double lower = 0.0;
  double upper = 0.0;
  // n == 1: the bounds coincide and the equal local level IS alpha.
  bool degenerate = false;
};

// Exact global level (rejection probability under the null) of a test,
// via the boundary-crossing dynamic program.
inline double exact_level(const TestDefinition& test,
                          const CrossingOptions& options = {}) {
  const CrossingResult result =
      test.two_sided()
          ? accept_prob_two_sided(test.lower, test.upper, options)
          : accept_prob_one_sided(test.lower, options);
  return 1.0 - result.acceptance_probability;
}

namespace detail {

inline constexpr double kLevelTolerance = 1e-8;
inline constexpr double kBracketTolerance = 1e-10;
inline constexpr int kMaxCalibrationIterations = 200;

inline void check_calibration_args(std::int64_t n, double alpha,
                                   const char* who) {
  if (n < 1) {
    throw std::invalid_argument(std::string(who) + ": n must be >= 1");
  }
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument(std::string(who) +
                                ": alpha outside (0, 1)");
  }
}

// Bisection on a monotone level function.  `increasing` states the
// documented direction; the endpoint levels are verified against it
// before any halving, and a violated bracket aborts loudly rather than
// returning a bogus root.
template <typename LevelFn>
CalibrationResult bisect_level(Family family, std::int64_t n, double alpha,
                               double lo, double hi, bool increasing,
                               double level_tolerance, const char* who,
                               LevelFn&& level) {
  const double level_lo = level(lo);
  const double level_hi = level(hi);
  const double below = increasing ? level_lo : level_hi;
  const double above = increasing ? level_hi : level_lo;
  if (!(below < alpha) || !(above > alpha)) {
    throw std::runtime_error(
        std::string(who) + ": level is not bracketed: level(" +
        std::to_string(lo) + ") = " + std::to_string(level_lo) +
        ", level(" + std::to_string(hi) + ") = " + std::to_string(level_hi) +
        ", target " + std::to_string(alpha));
  }
  CalibrationResult result;
  result.family = family;
  result.n = n;
  result.alpha = alpha;
  for (int iteration = 1; iteration <= kMaxCalibrationIterations;
       ++iteration) {
    const double mid = 0.5 * (lo + hi);
    const double at_mid = level(mid);
    result.iterations = iteration;
    if (std::fabs(at_mid - alpha) <= level_tolerance ||
        (hi - lo) <= kBracketTolerance) {
      result.parameter = mid;
      result.achieved_level = at_mid;
      result.bracket_width = hi - lo;
      return result;
    }
    const bool go_right = increasing ? (at_mid < alpha) : (at_mid > alpha);
    (go_right ? lo : hi) = mid;
  }
  throw std::runtime_error(std::string(who) +
                           ": bisection did not converge");
}

}  // namespace detail

// KS scale c with exact one-sided level alpha; the level is strictly
// decreasing in c on the bracket (0.1, 3).  For n <= 9 the upper end is
// pulled just below sqrt(n), where the staircase degenerates to all
// zeros and the level bottoms out at 0.
inline CalibrationResult calibrate_ks(std::int64_t n, double alpha,
                                      const CrossingOptions& options = {}) {
  detail::check_calibration_args(n, alpha, "calibrate_ks");
  const double degenerate_c = std::sqrt(static_cast<double>(n));
  const double hi = std::min(3.0, degenerate_c * (1.0 - 0x1.0p-20));
  return detail::bisect_level(
      Family::kKs, n, alpha, 0.1, hi, /*increasing=*/false,
      detail::kLevelTolerance, "calibrate_ks", [n, &options](double c) {
        return exact_level(ks_test_definition(n, c), options);
      });
}

// HC threshold d with exact level alpha for the one- or two-sided
// boundaries; the level is strictly decreasing in d on (1, 10).
inline CalibrationResult calibrate_hc(std::int64_t n, double alpha,
                                      Sided sided,
                                      const CrossingOptions& options = {}) {
  detail::check_calibration_args(n, alpha, "calibrate_hc");
  const Family family =
      sided == Sided::kOne ? Family::kHcOne : Family::kHcTwo;
  return detail::bisect_level(
      family, n, alpha, 1.0, 10.0, /*increasing=*/false,
      detail::kLevelTolerance, "calibrate_hc", [n, sided, &options](double d) {
        return exact_level(hc_test_definition(n, d, sided), options);
      });
}

// Common local level alpha_loc with exact level alpha; increasing on
// the Bonferroni bracket (alpha/n, alpha).  n = 1 is the degenerate
// closed point: the single-constraint test has level exactly alpha_loc.
inline CalibrationResult calibrate_ell(std::int64_t n, double alpha,
                                       Sided sided,
                                       const CrossingOptions& options = {}) {
  detail::check_calibration_args(n, alpha, "calibrate_ell");
  const Family family =
      sided == Sided::kOne ? Family::kEllOne : Family::kEllTwo;
  if (n == 1) {
    CalibrationResult result;
    result.family = family;
    result.n = 1;
    result.alpha = alpha;
    result.parameter = alpha;
    result.achieved_level =
        exact_level(ell_critical_values(1, alpha, sided), options);
    result.iterations = 0;
    result.bracket_width = 0.0;
    return result;
  }
  return detail::bisect_level(
      family, n, alpha, alpha / static_cast<double>(n), alpha,
      /*increasing=*/true, detail::kLevelTolerance, "calibrate_ell",
      [n, sided, &options](double alpha_loc) {
        return exact_level(ell_critical_values(n, alpha_loc, sided), options);
      });
}

// Closed-form rate of the calibrated common local level:
//   -log(1 - alpha) / (2 log(log n) log n).
// The finite-n calibrated value sits strictly below this for moderate n.
inline double ell_asymptotic_local_level(std::int64_t n, double alpha) {
  if (n < 3) {
    throw std::invalid_argument(
        "ell_asymptotic_local_level: n must be >= 3");
  }
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument(
        "ell_asymptotic_local_level: alpha outside (0, 1)");
  }
  const double log_n = std::log(static_cast<double>(n));
  return -std::log1p(-alpha) / (2.0 * std::log(log_n) * log_n);
}

// The containment alpha/n < alpha_loc < alpha satisfied by every
// calibrated common local level; at n = 1 both bounds collapse to alpha.
inline BonferroniBounds bonferroni_bounds(std::int64_t n, double alpha) {
  detail::check_calibration_args(n, alpha, "bonferroni_bounds");
  BonferroniBounds bounds;
  bounds.lower = alpha / static_cast<double>(n);
  bounds.upper = alpha;
  bounds.degenerate = (n == 1);
  return bounds;
}

// Monte Carlo calibration for sizes beyond the exact engine: bisection
// where each level evaluation is a seeded simulation with `reps`
// replications.  The requested level tolerance must exceed the binomial
// standard error at the target, or the tolerance is unreachable and the
// call fails explicitly.  Deterministic for fixed (seed, reps).
inline CalibrationResult calibrate_mc(Family family, std::int64_t n,
                                      double alpha, std::int64_t reps,
                                      std::uint64_t seed,
                                      double level_tolerance) {
  detail::check_calibration_args(n, alpha, "calibrate_mc");
  if (reps < 1) {
    throw std::invalid_argument("calibrate_mc: reps must be >= 1");
  }
  if (!(level_tolerance > 0.0)) {
    throw std::invalid_argument(
        "calibrate_mc: level tolerance must be > 0");
  }
  const double se_at_target =
      std::sqrt(alpha * (1.0 - alpha) / static_cast<double>(reps));
  if (!(se_at_target < level_tolerance)) {
    throw std::runtime_error(
        "calibrate_mc: standard error at the target level (" +
        std::to_string(se_at_target) + " with " + std::to_string(reps) +
        " reps) does not resolve the requested tolerance " +
        std::to_string(level_tolerance) + "; increase reps");
  }

  double lo = 0.0;
  double hi = 0.0;
  bool increasing = false;
  switch (family) {
    case Family::kKs:
      lo = 0.1;
      hi = std::min(3.0, std::sqrt(static_cast<double>(n)) *
                             (1.0 - 0x1.0p-20));
      increasing = false;
      break;
    case Family::kHcOne:
    case Family::kHcTwo:
      lo = 1.0;
      hi = 10.0;
      increasing = false;
      break;
    case Family::kEllOne:
    case Family::kEllTwo:
      lo = alpha / static_cast<double>(n);
      hi = alpha;
      increasing = true;
      break;
    case Family::kCustom:
      throw std::invalid_argument(
          "calibrate_mc: custom tests have no family parameter");
  }
  if (n == 1 &&
      (family == Family::kEllOne || family == Family::kEllTwo)) {
    CalibrationResult result;
    result.family = family;
    result.n = 1;
    result.alpha = alpha;
    result.parameter = alpha;
    result.achieved_level = alpha;
    result.iterations = 0;
    result.bracket_width = 0.0;
    return result;
  }

  std::uint64_t schedule = seed;
  const auto estimate = [&](double parameter) {
    const std::uint64_t eval_seed = detail::splitmix64_next(schedule);
    return mc_level_estimate(make_test_definition(family, n, parameter),
                             reps, eval_seed)
        .estimate;
  };
  return detail::bisect_level(family, n, alpha, lo, hi, increasing,
                              level_tolerance, "calibrate_mc", estimate);
}

}  // namespace gofl

#endif  // GOFL_CALIBRATION_HPP_
