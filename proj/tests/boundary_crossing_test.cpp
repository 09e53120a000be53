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

#include "gofl/boundary_crossing.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "test_oracles.hpp"

namespace gofl {
namespace {

// n = 2 one-sided closed form: P(U_{1:2} > a, U_{2:2} > b) for a <= b is
// (1 - b)(1 + b - 2a) by direct integration.
double two_point_one_sided(double a, double b) {
  return (1.0 - b) * (1.0 + b - 2.0 * a);
}

TEST(AcceptProbOneSided, TinyClosedForms) {
  EXPECT_NEAR(accept_prob_one_sided({0.2}).acceptance_probability, 0.8,
              1e-15);
  EXPECT_NEAR(accept_prob_one_sided({0.1, 0.3}).acceptance_probability, 0.77,
              1e-15);
  for (double a = 0.0; a < 0.85; a += 0.17) {
    for (double b = a; b < 0.95; b += 0.13) {
      EXPECT_NEAR(accept_prob_one_sided({a, b}).acceptance_probability,
                  two_point_one_sided(a, b), 1e-14)
          << "a=" << a << " b=" << b;
    }
  }
}

TEST(AcceptProbTwoSided, TinyClosedForms) {
  // n = 1: P(a < U < b) = b - a.
  EXPECT_NEAR(accept_prob_two_sided({0.1}, {0.9}).acceptance_probability, 0.8,
              1e-15);
  EXPECT_NEAR(accept_prob_two_sided({0.0}, {0.35}).acceptance_probability,
              0.35, 1e-15);
}

TEST(AcceptProbTwoSided, UnitUpperBoundaryReducesToOneSidedExactly) {
  testing::TinyRng rng(2026);
  for (std::size_t n : {1u, 2u, 5u, 17u, 40u}) {
    std::vector<double> lower, upper;
    testing::random_boundaries(rng, n, &lower, &upper);
    const std::vector<double> ones(n, 1.0);
    const CrossingResult one = accept_prob_one_sided(lower);
    const CrossingResult two = accept_prob_two_sided(lower, ones);
    EXPECT_EQ(one.acceptance_probability, two.acceptance_probability)
        << "n=" << n;
    EXPECT_EQ(one.log_scale_underflow_flag, two.log_scale_underflow_flag);
  }
}

TEST(AcceptProbTwoSided, MatchesDeterminantOracle) {
  testing::TinyRng rng(77);
  for (std::size_t n = 3; n <= 8; ++n) {
    for (int rep = 0; rep < 40; ++rep) {
      std::vector<double> lower, upper;
      testing::random_boundaries(rng, n, &lower, &upper);
      const double got =
          accept_prob_two_sided(lower, upper).acceptance_probability;
      const double want = static_cast<double>(
          testing::steck_probability(lower, upper));
      EXPECT_NEAR(got, want, 1e-12) << "n=" << n << " rep=" << rep;
    }
  }
}

TEST(AcceptProbOneSided, MatchesDeterminantOracle) {
  testing::TinyRng rng(78);
  for (std::size_t n = 3; n <= 8; ++n) {
    for (int rep = 0; rep < 40; ++rep) {
      std::vector<double> lower, upper;
      testing::random_boundaries(rng, n, &lower, &upper);
      const std::vector<double> ones(n, 1.0);
      const double got = accept_prob_one_sided(lower).acceptance_probability;
      const double want =
          static_cast<double>(testing::steck_probability(lower, ones));
      EXPECT_NEAR(got, want, 1e-12) << "n=" << n << " rep=" << rep;
    }
  }
}

TEST(AcceptProbTwoSided, MatchesExactIntegrationOracle) {
  testing::TinyRng rng(79);
  for (std::size_t n = 3; n <= 8; ++n) {
    for (int rep = 0; rep < 25; ++rep) {
      std::vector<double> lower, upper;
      testing::random_boundaries(rng, n, &lower, &upper);
      const double got =
          accept_prob_two_sided(lower, upper).acceptance_probability;
      const double want = static_cast<double>(
          testing::ordered_quadrature_probability(lower, upper));
      EXPECT_NEAR(got, want, 1e-10) << "n=" << n << " rep=" << rep;
    }
  }
}

// The two oracles are validated against each other and against the n <= 2
// closed forms, so a defect in either cannot silently vouch for the DP.
TEST(Oracles, AgreeWithEachOtherAndWithClosedForms) {
  EXPECT_NEAR(static_cast<double>(testing::steck_probability({0.1}, {0.9})),
              0.8, 1e-16);
  EXPECT_NEAR(static_cast<double>(
                  testing::ordered_quadrature_probability({0.1}, {0.9})),
              0.8, 1e-16);
  EXPECT_NEAR(static_cast<double>(
                  testing::steck_probability({0.1, 0.3}, {1.0, 1.0})),
              two_point_one_sided(0.1, 0.3), 1e-16);
  EXPECT_NEAR(
      static_cast<double>(
          testing::ordered_quadrature_probability({0.1, 0.3}, {1.0, 1.0})),
      two_point_one_sided(0.1, 0.3), 1e-16);
  testing::TinyRng rng(80);
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<double> lower, upper;
      testing::random_boundaries(rng, n, &lower, &upper);
      const long double det = testing::steck_probability(lower, upper);
      const long double quad =
          testing::ordered_quadrature_probability(lower, upper);
      EXPECT_NEAR(static_cast<double>(det), static_cast<double>(quad), 1e-13)
          << "n=" << n << " rep=" << rep;
    }
  }
}

// Reference acceptance values for the one-sided staircase boundary
// max(0, i/n - d), frozen from a 40-digit evaluation of the classical
// closed-form crossing series (an independent formula, not a simulation).
TEST(AcceptProbOneSided, MatchesClosedFormSeriesAtScale) {
  struct Case {
    int n;
    double d;
    double reject;
  };
  const Case cases[] = {
      {100, 0.122387, 0.045916292385571023},
      {500, 0.05473313031245335, 0.048176015218738556},
      {1000, 0.03870216759950275, 0.048710638943392723},
      {2000, 0.029068883707497266, 0.033385201894219959},
      {2000, 0.01788854381999832, 0.27475514987433228},
  };
  for (const Case& c : cases) {
    std::vector<double> lower(static_cast<std::size_t>(c.n));
    for (int i = 1; i <= c.n; ++i) {
      lower[static_cast<std::size_t>(i - 1)] =
          std::max(0.0, static_cast<double>(i) / c.n - c.d);
    }
    const double accept = accept_prob_one_sided(lower).acceptance_probability;
    EXPECT_NEAR(1.0 - accept, c.reject, 1e-10) << "n=" << c.n << " d=" << c.d;
  }
}

TEST(AcceptProb, RaisingLowerOrLoweringUpperWeaklyDecreasesAcceptance) {
  testing::TinyRng rng(81);
  std::vector<double> lower, upper;
  testing::random_boundaries(rng, 30, &lower, &upper);
  const double base =
      accept_prob_two_sided(lower, upper).acceptance_probability;
  for (std::size_t j : {0u, 7u, 15u, 29u}) {
    std::vector<double> raised = lower;
    const double cap = (j + 1 < 30) ? raised[j + 1] : upper[j];
    raised[j] = raised[j] + 0.5 * (std::min(cap, upper[j]) - raised[j]);
    const double moved =
        accept_prob_two_sided(raised, upper).acceptance_probability;
    EXPECT_LE(moved, base + 1e-13) << "raised lower at " << j;
  }
  for (std::size_t j : {0u, 7u, 15u, 29u}) {
    std::vector<double> cut = upper;
    const double floors = (j > 0) ? cut[j - 1] : lower[j];
    cut[j] = cut[j] - 0.5 * (cut[j] - std::max(floors, lower[j]));
    if (!(cut[j] > lower[j])) continue;
    const double moved =
        accept_prob_two_sided(lower, cut).acceptance_probability;
    EXPECT_LE(moved, base + 1e-13) << "lowered upper at " << j;
  }
}

TEST(AcceptProb, UnderflowIsFlaggedNotFabricated) {
  // All 50 observations must sit above 1 - 1e-13: acceptance is
  // (1e-13)^50, far below the double range.
  std::vector<double> lower(50, 1.0 - 1e-13);
  const CrossingResult r = accept_prob_one_sided(lower);
  EXPECT_EQ(r.acceptance_probability, 0.0);
  EXPECT_TRUE(r.log_scale_underflow_flag);
  // A moderate boundary must not raise the flag.
  const CrossingResult ok = accept_prob_one_sided({0.1, 0.2, 0.5});
  EXPECT_FALSE(ok.log_scale_underflow_flag);
  EXPECT_GT(ok.acceptance_probability, 0.0);
}

TEST(AcceptProb, MalformedBoundariesThrow) {
  EXPECT_THROW(accept_prob_one_sided({}), std::invalid_argument);
  EXPECT_THROW(accept_prob_one_sided({-0.1}), std::invalid_argument);
  EXPECT_THROW(accept_prob_one_sided({0.5, 0.4}), std::invalid_argument);
  EXPECT_THROW(accept_prob_one_sided({0.2, 1.0}), std::invalid_argument);
  EXPECT_THROW(accept_prob_two_sided({0.1, 0.2}, {0.9}),
               std::invalid_argument);
  EXPECT_THROW(accept_prob_two_sided({0.1}, {0.05}), std::invalid_argument);
  EXPECT_THROW(accept_prob_two_sided({0.0, 0.2}, {0.5, 0.4}),
               std::invalid_argument);
  EXPECT_THROW(accept_prob_two_sided({0.1}, {1.0000001}),
               std::invalid_argument);
}

TEST(AcceptProb, ExactLimitIsEnforced) {
  CrossingOptions options;
  options.exact_limit = 10;
  const std::vector<double> small(10, 0.01);
  EXPECT_NO_THROW(accept_prob_one_sided(small, options));
  const std::vector<double> big(11, 0.01);
  EXPECT_THROW(accept_prob_one_sided(big, options), std::domain_error);
}

TEST(AcceptProb, TiedInteriorLowerValuesMatchClosedForm) {
  // A flat lower boundary at z forces every observation above z:
  // acceptance (1 - z)^n.
  for (double z : {0.05, 0.3, 0.62}) {
    for (int n : {1, 2, 7, 23}) {
      const std::vector<double> lower(static_cast<std::size_t>(n), z);
      EXPECT_NEAR(accept_prob_one_sided(lower).acceptance_probability,
                  std::pow(1.0 - z, n), 1e-13)
          << "z=" << z << " n=" << n;
    }
  }
}

}  // namespace
}  // namespace gofl
