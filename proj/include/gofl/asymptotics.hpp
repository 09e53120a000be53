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

#ifndef GOFL_ASYMPTOTICS_HPP_
#define GOFL_ASYMPTOTICS_HPP_

// Closed-form asymptotic machinery for the local levels of
// higher-criticism boundaries h_{i,n}(d_n(t)).  Everything is driven by
// the doubly-logarithmic scale u = log(log n) and by how the rank i
// grows relative to u: ranks are classified into bands (extreme, edge,
// band, central, and their mirror images at the right end), each band
// carries a truncated expansion of the boundary, a Poisson or normal
// approximation of the local level, and an explicit leading-order
// formula for the local level itself.  All approximations drop their
// order-term remainders, so tests compare them to the exact
// beta_cdf(i, n, h) values directionally (the ratio approaches 1 as n
// grows) rather than at fixed tolerances: the u-scale grows so slowly
// that absolute tolerances at practical n are meaningless.
//
// Band membership is a property of rank *sequences*, not of a single
// (i, n) pair, so classify_rank is an explicit finite-n heuristic and
// every evaluator accepts a caller-supplied regime override.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "gofl/special_functions.hpp"
#include "gofl/test_families.hpp"

namespace gofl {

// Growth classes of a rank sequence i_n relative to u = log(log n),
// listed in increasing rank order.  "Scaled" tags carry a positive
// scale constant; the others do not.
enum class RegimeTag {
  kExtremeLeft,      // i / u -> 0 (fixed or very slowly growing i)
  kEdgeLeft,         // i / u -> c in (0, inf)
  kBandLeft,         // i / u -> inf and i / u^3 -> 0
  kBandLeftScaled,   // i / u^3 -> c in (0, inf)
  kCentral,          // i (1 - i/n) / u^3 -> inf
  kBandRightScaled,  // (n - i) / u^3 -> c in (0, inf)
  kBandRight,        // (n - i) / u -> inf and (n - i) / u^3 -> 0
  kEdgeRight,        // (n - i) / u -> c in (0, inf)
  kExtremeRight,     // (n - i) / u -> 0
};

// A regime tag plus, for the scaled tags, the finite-n value of the
// scale ratio oriented the way the closed-form evaluators consume it:
// u/i for kEdgeLeft, i/u^3 for kBandLeftScaled, (n-i)/u^3 for
// kBandRightScaled, (n-i)/u for kEdgeRight.
struct RankRegime {
  RegimeTag tag = RegimeTag::kCentral;
  std::optional<double> scale;
};

// One evaluated approximation.  `value` is log(alpha) when log_scale
// is set (the only honest scale for quantities that underflow long
// before the asymptotics kick in); it is always finite.  formula_id
// names the closed form actually evaluated so convergence expectations
// can be attached per formula.
struct ApproxValue {
  double value = 0.0;
  bool log_scale = false;
  RankRegime regime;
  std::string formula_id;
};

enum class RatioLimitCategory { kOne, kStrictBetween, kZero };

// Side conditions distinguishing the limit of alpha_{i2,n}/alpha_{i1,n}
// for two rank sequences in the same band (where the band itself does
// not decide the limit).
enum class GrowthRelation {
  // i1/i2 -> 1 fast: the gap is o(sqrt(i/u^3)) (band tags).
  kRatioOne,
  // i1/i2 = 1 - c sqrt(i/u^3) with c > 0 (band tags).
  kRatioConstantGap,
  // i2 - i1 fixed = m (edge tags).
  kFixedDifference,
  // The gap grows faster than every case above.
  kDivergent,
};

// Stable string names for the regime tags (used in CLI flags and
// diagnostics).
inline const char* regime_tag_name(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::kExtremeLeft: return "extreme-left";
    case RegimeTag::kEdgeLeft: return "edge-left";
    case RegimeTag::kBandLeft: return "band-left";
    case RegimeTag::kBandLeftScaled: return "band-left-scaled";
    case RegimeTag::kCentral: return "central";
    case RegimeTag::kBandRightScaled: return "band-right-scaled";
    case RegimeTag::kBandRight: return "band-right";
    case RegimeTag::kEdgeRight: return "edge-right";
    case RegimeTag::kExtremeRight: return "extreme-right";
  }
  throw std::logic_error("regime_tag_name: unknown tag");
}

// Inverse of regime_tag_name; returns false when `name` matches no tag.
inline bool parse_regime_tag(const std::string& name, RegimeTag* tag) {
  const RegimeTag all[] = {
      RegimeTag::kExtremeLeft,     RegimeTag::kEdgeLeft,
      RegimeTag::kBandLeft,        RegimeTag::kBandLeftScaled,
      RegimeTag::kCentral,         RegimeTag::kBandRightScaled,
      RegimeTag::kBandRight,       RegimeTag::kEdgeRight,
      RegimeTag::kExtremeRight};
  for (RegimeTag candidate : all) {
    if (name == regime_tag_name(candidate)) {
      *tag = candidate;
      return true;
    }
  }
  return false;
}

inline bool regime_tag_is_scaled(RegimeTag tag) {
  return tag == RegimeTag::kEdgeLeft || tag == RegimeTag::kBandLeftScaled ||
         tag == RegimeTag::kBandRightScaled || tag == RegimeTag::kEdgeRight;
}

inline RankRegime make_regime(RegimeTag tag) {
  if (regime_tag_is_scaled(tag)) {
    throw std::invalid_argument(
        "make_regime: this tag requires a scale constant");
  }
  return {tag, std::nullopt};
}

inline RankRegime make_regime(RegimeTag tag, double scale) {
  if (!regime_tag_is_scaled(tag)) {
    throw std::invalid_argument(
        "make_regime: this tag does not take a scale constant");
  }
  if (!(scale > 0.0)) {
    throw std::invalid_argument("make_regime: scale must be > 0");
  }
  return {tag, scale};
}

namespace detail {

// u = log(log n).  The bands compare ranks against u/log(u), u log(u),
// u^3/log(u) and u^3 log(u), which only order themselves once u > 1,
// that is, n > e^e; we require n >= 16.
inline double doubly_log_scale(std::int64_t n, const char* who) {
  if (n < 16) {
    throw std::invalid_argument(
        std::string(who) +
        ": n must be >= 16 (the doubly-logarithmic band scale needs "
        "log(log n) > 1)");
  }
  return std::log(std::log(static_cast<double>(n)));
}

inline void check_rank_in_range(std::int64_t i, std::int64_t n,
                                const char* who) {
  if (i < 1 || i > n) {
    throw std::invalid_argument(std::string(who) +
                                ": rank i must satisfy 1 <= i <= n");
  }
}

inline bool regime_is_left(RegimeTag tag) {
  return tag == RegimeTag::kExtremeLeft || tag == RegimeTag::kEdgeLeft ||
         tag == RegimeTag::kBandLeft || tag == RegimeTag::kBandLeftScaled;
}

inline bool regime_is_right(RegimeTag tag) {
  return tag == RegimeTag::kBandRightScaled ||
         tag == RegimeTag::kBandRight || tag == RegimeTag::kEdgeRight ||
         tag == RegimeTag::kExtremeRight;
}

// A regime override must at least put the rank on the half of the
// sample it describes; anything finer is the caller's judgment call,
// since finite-n membership is heuristic by nature.
inline void check_regime_rank(std::int64_t i, std::int64_t n,
                              const RankRegime& regime, const char* who) {
  check_rank_in_range(i, n, who);
  if (regime_tag_is_scaled(regime.tag) && !regime.scale.has_value()) {
    throw std::invalid_argument(std::string(who) +
                                ": scaled regime is missing its constant");
  }
  if (!regime_tag_is_scaled(regime.tag) && regime.scale.has_value()) {
    throw std::invalid_argument(
        std::string(who) + ": non-scaled regime must not carry a constant");
  }
  if (regime_is_left(regime.tag) && 2 * i > n + 1) {
    throw std::invalid_argument(
        std::string(who) + ": left-band regime for a rank in the right half");
  }
  if (regime_is_right(regime.tag) && 2 * (n - i) > n + 1) {
    throw std::invalid_argument(
        std::string(who) + ": right-band regime for a rank in the left half");
  }
  if (regime.tag == RegimeTag::kCentral && (i < 1 || i > n - 1)) {
    throw std::invalid_argument(std::string(who) +
                                ": central regime needs 1 <= i <= n-1");
  }
}

// Exact boundary value h_{i,n}(d_n(t)) that all approximations target.
inline double exact_boundary(std::int64_t i, std::int64_t n, double t) {
  return hc_lower_boundary(i, n, hc_threshold(n, t).d);
}

// log of the Poisson mass P(Y = k) for Y ~ Poisson(lambda), lambda > 0.
inline double log_poisson_mass(std::int64_t k, double lambda) {
  const double base = -lambda - std::lgamma(static_cast<double>(k) + 1.0);
  if (k == 0) return base;
  return base + static_cast<double>(k) * std::log(lambda);
}

}  // namespace detail

// Finite-n heuristic band assignment: with u = log(log n), the rank's
// smaller side m = min(i, n - i) is compared against the cascade
// u/log(u) (extreme), u log(u) (edge), u^3/log(u) (band),
// u^3 log(u) (scaled band); beyond all four the rank is central.  For
// moderate n some cascade intervals are empty (u log u < u / log u
// until u > e); the cascade simply skips them.
inline RankRegime classify_rank(std::int64_t i, std::int64_t n) {
  const double u = detail::doubly_log_scale(n, "classify_rank");
  detail::check_rank_in_range(i, n, "classify_rank");
  const double log_u = std::log(u);
  const bool left = i <= n - i;
  const double side = static_cast<double>(left ? i : n - i);
  const double u3 = u * u * u;
  if (side <= u / log_u) {
    return {left ? RegimeTag::kExtremeLeft : RegimeTag::kExtremeRight,
            std::nullopt};
  }
  if (side <= u * log_u) {
    // Edge tags carry the ratio the evaluators use: u/i on the left,
    // (n-i)/u on the right.
    return {left ? RegimeTag::kEdgeLeft : RegimeTag::kEdgeRight,
            left ? u / side : side / u};
  }
  if (side <= u3 / log_u) {
    return {left ? RegimeTag::kBandLeft : RegimeTag::kBandRight,
            std::nullopt};
  }
  if (side <= u3 * log_u) {
    return {left ? RegimeTag::kBandLeftScaled : RegimeTag::kBandRightScaled,
            side / u3};
  }
  return {RegimeTag::kCentral, std::nullopt};
}

// Truncated expansion of n h_{i,n}(d_n(t)) / i for the rank's band,
// dropping the order-term remainder.  The returned value is on the
// linear scale; compare against exact n h / i with
// h = hc_lower_boundary(i, n, hc_threshold(n, t).d).
inline ApproxValue h_expansion(std::int64_t i, std::int64_t n, double t,
                               const RankRegime& regime) {
  const double u = detail::doubly_log_scale(n, "h_expansion");
  detail::check_regime_rank(i, n, regime, "h_expansion");
  const double ii = static_cast<double>(i);
  const double nn = static_cast<double>(n);
  // The shared second-order ingredient log(u) + 2t - log(pi).
  const double log_term = std::log(u) + 2.0 * t - std::log(kPi);
  ApproxValue result;
  result.log_scale = false;
  result.regime = regime;
  switch (regime.tag) {
    case RegimeTag::kExtremeLeft: {
      result.value =
          ii / (2.0 * u) * (1.0 - log_term / (2.0 * u) - ii / u);
      result.formula_id = "boundary-extreme-left";
      return result;
    }
    case RegimeTag::kEdgeLeft: {
      const double c = u / ii;
      const double delta = 1.0 + c - std::sqrt(c * c + 2.0 * c);
      result.value =
          delta * (1.0 - log_term / (2.0 * ii * std::sqrt(c * c + 2.0 * c)));
      result.formula_id = "boundary-edge-left";
      return result;
    }
    case RegimeTag::kBandLeft:
    case RegimeTag::kBandLeftScaled:
    case RegimeTag::kCentral:
    case RegimeTag::kBandRightScaled:
    case RegimeTag::kBandRight: {
      if (i > n - 1) {
        throw std::invalid_argument(
            "h_expansion: the central-band expansion needs i <= n-1");
      }
      const double tail = 1.0 - ii / nn;
      result.value = 1.0 - std::sqrt(2.0 * u / ii * tail) -
                     log_term / (2.0 * std::sqrt(2.0 * ii * u)) *
                         std::sqrt(tail) +
                     (1.0 - 2.0 * ii / nn) * u / ii;
      result.formula_id = "boundary-central-band";
      return result;
    }
    case RegimeTag::kEdgeRight:
    case RegimeTag::kExtremeRight: {
      const double c = static_cast<double>(n - i) / u;
      const double root = std::sqrt(1.0 + 2.0 * c);
      result.value = 1.0 - u / ii * (1.0 + root) -
                     log_term / (2.0 * ii) * (1.0 + (1.0 + c) / root);
      result.formula_id = "boundary-edge-right";
      return result;
    }
  }
  throw std::logic_error("h_expansion: unreachable");
}

// Poisson approximation of the local level alpha_{i,n} at the exact
// boundary h = h_{i,n}(d_n(t)): a band-specific prefactor times the
// Poisson(n h) mass at i (left bands) or the Poisson(n (1 - h)) mass
// at n - i (right bands).  Central ranks are covered only while the
// relevant side is at most sqrt(n / u); deeper ranks have no Poisson
// form and the call fails.  Returns log(alpha).
inline ApproxValue local_level_poisson_approx(
    std::int64_t i, std::int64_t n, double t,
    const std::optional<RankRegime>& regime_override = std::nullopt) {
  const double u = detail::doubly_log_scale(n, "local_level_poisson_approx");
  const RankRegime regime =
      regime_override.has_value() ? *regime_override : classify_rank(i, n);
  detail::check_regime_rank(i, n, regime, "local_level_poisson_approx");
  const double h = detail::exact_boundary(i, n, t);
  const double nn = static_cast<double>(n);
  const double ii = static_cast<double>(i);
  const double side_right = static_cast<double>(n - i);

  enum class PoissonCase { kLeftUnit, kLeftEdge, kLeftRoot,
                           kRightUnit, kRightEdge, kRightRoot };
  PoissonCase which;
  switch (regime.tag) {
    case RegimeTag::kExtremeLeft: which = PoissonCase::kLeftUnit; break;
    case RegimeTag::kEdgeLeft: which = PoissonCase::kLeftEdge; break;
    case RegimeTag::kBandLeft:
    case RegimeTag::kBandLeftScaled: which = PoissonCase::kLeftRoot; break;
    case RegimeTag::kBandRightScaled:
    case RegimeTag::kBandRight: which = PoissonCase::kRightRoot; break;
    case RegimeTag::kEdgeRight: which = PoissonCase::kRightEdge; break;
    case RegimeTag::kExtremeRight: which = PoissonCase::kRightUnit; break;
    case RegimeTag::kCentral: {
      const double limit = std::sqrt(nn / u);
      if (ii <= limit) {
        which = PoissonCase::kLeftRoot;
      } else if (side_right <= limit) {
        which = PoissonCase::kRightRoot;
      } else {
        throw std::domain_error(
            "local_level_poisson_approx: rank too central; no Poisson "
            "form applies (both i and n-i exceed sqrt(n/u))");
      }
      break;
    }
    default:
      throw std::logic_error("local_level_poisson_approx: unreachable");
  }

  ApproxValue result;
  result.log_scale = true;
  result.regime = regime;
  switch (which) {
    case PoissonCase::kLeftUnit: {
      result.value = detail::log_poisson_mass(i, nn * h);
      result.formula_id = "poisson-extreme-left";
      return result;
    }
    case PoissonCase::kLeftEdge: {
      const double c = u / ii;
      const double prefactor = std::sqrt(c * c + 2.0 * c) - c;
      result.value = detail::log_poisson_mass(i, nn * h) -
                     std::log(prefactor);
      result.formula_id = "poisson-edge-left";
      return result;
    }
    case PoissonCase::kLeftRoot: {
      result.value = detail::log_poisson_mass(i, nn * h) +
                     0.5 * std::log(ii / (2.0 * u));
      result.formula_id = "poisson-band-left";
      return result;
    }
    case PoissonCase::kRightUnit: {
      result.value = detail::log_poisson_mass(n - i, nn * (1.0 - h));
      result.formula_id = "poisson-extreme-right";
      return result;
    }
    case PoissonCase::kRightEdge: {
      const double c = side_right / u;
      const double prefactor =
          1.0 + c / (1.0 + std::sqrt(1.0 + 2.0 * c));
      result.value = detail::log_poisson_mass(n - i, nn * (1.0 - h)) +
                     std::log(prefactor);
      result.formula_id = "poisson-edge-right";
      return result;
    }
    case PoissonCase::kRightRoot: {
      if (n - i < 1) {
        throw std::invalid_argument(
            "local_level_poisson_approx: right band needs n - i >= 1");
      }
      result.value = detail::log_poisson_mass(n - i, nn * (1.0 - h)) +
                     0.5 * std::log(side_right / (2.0 * u));
      result.formula_id = "poisson-band-right";
      return result;
    }
  }
  throw std::logic_error("local_level_poisson_approx: unreachable");
}

// Normal approximation of the local level for central ranks: with the
// exact boundary h, sigma = sqrt(n h (1 - h)) and
// x = (i - n h) / sigma, alpha ~ phi(x) / x.  Returns log(alpha).
inline ApproxValue local_level_normal_approx(
    std::int64_t i, std::int64_t n, double t,
    const std::optional<RankRegime>& regime_override = std::nullopt) {
  detail::doubly_log_scale(n, "local_level_normal_approx");
  const RankRegime regime =
      regime_override.has_value() ? *regime_override : classify_rank(i, n);
  detail::check_regime_rank(i, n, regime, "local_level_normal_approx");
  if (regime.tag != RegimeTag::kCentral) {
    throw std::invalid_argument(
        "local_level_normal_approx: only central ranks admit the normal "
        "form; rank classifies otherwise (pass an explicit central "
        "override to force it)");
  }
  const double h = detail::exact_boundary(i, n, t);
  const double nn = static_cast<double>(n);
  const double sigma = std::sqrt(nn * h * (1.0 - h));
  const double x = (static_cast<double>(i) - nn * h) / sigma;
  if (!(x > 0.0)) {
    throw std::domain_error(
        "local_level_normal_approx: rank does not exceed the boundary "
        "mean n h, the tail form does not apply");
  }
  ApproxValue result;
  result.value = -0.5 * x * x - 0.5 * kLog2Pi - std::log(x);
  result.log_scale = true;
  result.regime = regime;
  result.formula_id = "normal-central";
  return result;
}

// Explicit leading-order local level for the rank's band, with every
// order-term remainder dropped (the [1 + o(1)] factors set to 1 and
// the o(u) exponent correction set to 0).  Returns log(alpha).
inline ApproxValue local_level_asymptotic(std::int64_t i, std::int64_t n,
                                          double t,
                                          const RankRegime& regime) {
  const double u = detail::doubly_log_scale(n, "local_level_asymptotic");
  detail::check_regime_rank(i, n, regime, "local_level_asymptotic");
  const double ii = static_cast<double>(i);
  const double side_right = static_cast<double>(n - i);
  const double log_u = std::log(u);
  // log(gamma) for gamma = e/2, the scale that pairs rank powers with
  // the Stirling factor.
  const double log_gamma = 1.0 - std::log(2.0);
  // The central plateau exp(-t) / (2 u log n); log(log n) = u.
  const double log_plateau = -t - std::log(2.0) - log_u - u;
  ApproxValue result;
  result.log_scale = true;
  result.regime = regime;
  switch (regime.tag) {
    case RegimeTag::kExtremeLeft: {
      if (ii * ii <= u) {
        // (i^2 / (2u))^i / i!, the form for i = o(sqrt(u)).
        result.value =
            ii * (2.0 * std::log(ii) - std::log(2.0 * u)) -
            std::lgamma(ii + 1.0);
        result.formula_id = "level-extreme-left-factorial";
        return result;
      }
      // (2 pi i)^{-1/2} (gamma i / u)^i exp(-i v) with
      // v = (log u + 2t - log pi + 3i) / (2u).
      const double v =
          (log_u + 2.0 * t - std::log(kPi) + 3.0 * ii) / (2.0 * u);
      result.value = -0.5 * std::log(2.0 * kPi * ii) +
                     ii * (log_gamma + std::log(ii) - log_u) - ii * v;
      result.formula_id = "level-extreme-left-general";
      return result;
    }
    case RegimeTag::kEdgeLeft: {
      const double c = u / ii;
      const double root = std::sqrt(c * c + 2.0 * c);
      const double delta = 1.0 + c - root;
      result.value = 0.5 * std::log(c) - std::log1p(-delta) -
                     0.5 * std::log(2.0 * kPi * u) +
                     ii * (std::log(delta) + 1.0 - delta) +
                     (1.0 - delta) / root *
                         (0.5 * std::log(kPi) - t - 0.5 * log_u);
      result.formula_id = "level-edge-left";
      return result;
    }
    case RegimeTag::kBandLeft:
    case RegimeTag::kBandLeftScaled: {
      const double zeta = std::sqrt(u / ii);
      result.value = log_plateau + std::sqrt(2.0) / 3.0 * zeta * u;
      result.formula_id = "level-band";
      return result;
    }
    case RegimeTag::kCentral: {
      result.value = log_plateau;
      result.formula_id = "level-central-plateau";
      return result;
    }
    case RegimeTag::kBandRightScaled:
    case RegimeTag::kBandRight: {
      if (n - i < 1) {
        throw std::invalid_argument(
            "local_level_asymptotic: right band needs n - i >= 1");
      }
      const double zeta = -std::sqrt(u / side_right);
      result.value = log_plateau + std::sqrt(2.0) / 3.0 * zeta * u;
      result.formula_id = "level-band";
      return result;
    }
    case RegimeTag::kEdgeRight: {
      if (n - i < 1) {
        throw std::invalid_argument(
            "local_level_asymptotic: the right edge form needs n - i >= 1");
      }
      const double c = side_right / u;
      const double root = std::sqrt(1.0 + 2.0 * c);
      result.value =
          std::log1p(c / (1.0 + root)) -
          0.5 * std::log(2.0 * kPi * c * u) +
          side_right * std::log((1.0 + c + root) / c) +
          (1.0 + 1.0 / root) * (0.5 * std::log(kPi) - t - 0.5 * log_u) -
          (1.0 + root) * u;
      result.formula_id = "level-edge-right";
      return result;
    }
    case RegimeTag::kExtremeRight: {
      const double m = side_right;
      if (m * m <= u) {
        // pi e^{-2t} / (u log^2 n) (2u / e^2)^{n-i} / (n-i)!; the
        // log^2 n factor contributes 2u to the log.
        result.value = std::log(kPi) - 2.0 * t - log_u - 2.0 * u +
                       m * (std::log(2.0 * u) - 2.0) -
                       std::lgamma(m + 1.0);
        result.formula_id = "level-extreme-right-factorial";
        return result;
      }
      // sqrt(pi) e^{-2t} / sqrt(2(n-i)) / (u log^2 n)
      //   (u / (gamma (n-i)))^{n-i} exp((n-i) w) with
      // w = (log u + 2t - log pi + 3(n-i)) / (2u).
      const double w =
          (log_u + 2.0 * t - std::log(kPi) + 3.0 * m) / (2.0 * u);
      result.value = 0.5 * std::log(kPi) - 2.0 * t -
                     0.5 * std::log(2.0 * m) - log_u - 2.0 * u +
                     m * (log_u - log_gamma - std::log(m)) + m * w;
      result.formula_id = "level-extreme-right-general";
      return result;
    }
  }
  throw std::logic_error("local_level_asymptotic: unreachable");
}

namespace detail {

inline int regime_rank_order(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::kExtremeLeft: return 0;
    case RegimeTag::kEdgeLeft: return 1;
    case RegimeTag::kBandLeft: return 2;
    case RegimeTag::kBandLeftScaled: return 3;
    case RegimeTag::kCentral: return 4;
    case RegimeTag::kBandRightScaled: return 5;
    case RegimeTag::kBandRight: return 6;
    case RegimeTag::kEdgeRight: return 7;
    case RegimeTag::kExtremeRight: return 8;
  }
  throw std::logic_error("regime_rank_order: unreachable");
}

// For two sequences in the same scaled band, rank order translates to
// an order on the stored scale constants; the direction depends on the
// tag's orientation (kEdgeLeft stores u/i, which *decreases* in i).
inline bool scaled_rank_order_ok(RegimeTag tag, double scale1,
                                 double scale2) {
  switch (tag) {
    case RegimeTag::kEdgeLeft: return scale1 >= scale2;       // u/i
    case RegimeTag::kBandLeftScaled: return scale1 <= scale2;  // i/u^3
    case RegimeTag::kBandRightScaled: return scale1 >= scale2;  // (n-i)/u^3
    case RegimeTag::kEdgeRight: return scale1 >= scale2;       // (n-i)/u
    default: return true;
  }
}

}  // namespace detail

// The limit of alpha_{i2,n} / alpha_{i1,n} for rank sequences i1 < i2
// in the given regimes: kOne when the local levels are asymptotically
// equal, kStrictBetween when the limit exists in (0, 1), kZero for
// every other pair (the asymptotic monotonicity default).  Same-band
// pairs in the unscaled bands need a GrowthRelation to decide, and the
// call refuses to guess when it is missing.
inline RatioLimitCategory ratio_limit_category(
    const RankRegime& regime1, const RankRegime& regime2,
    const std::optional<GrowthRelation>& relation = std::nullopt) {
  const auto require_scale = [](const RankRegime& regime, const char* who) {
    if (regime_tag_is_scaled(regime.tag) && !regime.scale.has_value()) {
      throw std::invalid_argument(std::string(who) +
                                  ": scaled regime is missing its constant");
    }
  };
  require_scale(regime1, "ratio_limit_category");
  require_scale(regime2, "ratio_limit_category");
  const int order1 = detail::regime_rank_order(regime1.tag);
  const int order2 = detail::regime_rank_order(regime2.tag);
  if (order1 > order2) {
    throw std::invalid_argument(
        "ratio_limit_category: regime1 must precede regime2 in rank order");
  }

  if (regime1.tag == regime2.tag) {
    const RegimeTag tag = regime1.tag;
    switch (tag) {
      case RegimeTag::kCentral:
        return RatioLimitCategory::kOne;
      case RegimeTag::kBandLeftScaled:
      case RegimeTag::kBandRightScaled: {
        const double scale1 = *regime1.scale;
        const double scale2 = *regime2.scale;
        if (!detail::scaled_rank_order_ok(tag, scale1, scale2)) {
          throw std::invalid_argument(
              "ratio_limit_category: scale constants contradict the rank "
              "order i1 < i2");
        }
        return scale1 == scale2 ? RatioLimitCategory::kOne
                                : RatioLimitCategory::kStrictBetween;
      }
      case RegimeTag::kBandLeft:
      case RegimeTag::kBandRight: {
        if (!relation.has_value()) {
          throw std::invalid_argument(
              "ratio_limit_category: a same-band pair in an unscaled band "
              "needs a growth relation to decide the limit");
        }
        switch (*relation) {
          case GrowthRelation::kRatioOne:
            return RatioLimitCategory::kOne;
          case GrowthRelation::kRatioConstantGap:
            return RatioLimitCategory::kStrictBetween;
          case GrowthRelation::kFixedDifference:
            // A fixed difference is an o(sqrt(i/u^3)) perturbation.
            return RatioLimitCategory::kOne;
          case GrowthRelation::kDivergent:
            return RatioLimitCategory::kZero;
        }
        throw std::logic_error("ratio_limit_category: unreachable");
      }
      case RegimeTag::kEdgeLeft:
      case RegimeTag::kEdgeRight: {
        const double scale1 = *regime1.scale;
        const double scale2 = *regime2.scale;
        if (!detail::scaled_rank_order_ok(tag, scale1, scale2)) {
          throw std::invalid_argument(
              "ratio_limit_category: scale constants contradict the rank "
              "order i1 < i2");
        }
        if (scale1 != scale2) {
          // Different edge scales force a gap growing like u.
          return RatioLimitCategory::kZero;
        }
        if (!relation.has_value()) {
          throw std::invalid_argument(
              "ratio_limit_category: an equal-scale edge pair needs a "
              "growth relation to decide the limit");
        }
        switch (*relation) {
          case GrowthRelation::kFixedDifference:
            return RatioLimitCategory::kStrictBetween;
          case GrowthRelation::kRatioOne:
          case GrowthRelation::kRatioConstantGap:
          case GrowthRelation::kDivergent:
            return RatioLimitCategory::kZero;
        }
        throw std::logic_error("ratio_limit_category: unreachable");
      }
      case RegimeTag::kExtremeLeft:
      case RegimeTag::kExtremeRight:
        // Even a gap of one rank sends the ratio to zero here.
        return RatioLimitCategory::kZero;
    }
    throw std::logic_error("ratio_limit_category: unreachable");
  }

  // Cross-band pairs: only a scaled band against the central plateau
  // (from the matching side) leaves a limit strictly inside (0, 1).
  if (regime1.tag == RegimeTag::kBandLeftScaled &&
      (regime2.tag == RegimeTag::kCentral ||
       regime2.tag == RegimeTag::kBandRightScaled)) {
    return RatioLimitCategory::kStrictBetween;
  }
  if (regime1.tag == RegimeTag::kCentral &&
      regime2.tag == RegimeTag::kBandRightScaled) {
    return RatioLimitCategory::kStrictBetween;
  }
  return RatioLimitCategory::kZero;
}

}  // namespace gofl

#endif  // GOFL_ASYMPTOTICS_HPP_
