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

// gofl — command-line surface over the library.
//
//   gofl calibrate    exact-level calibration of a test family
//   gofl local-levels local-level profile of a stored test definition
//   gofl curves       critical-value curves on a grid
//   gofl test         run a stored test on a sample file
//   gofl approx       asymptotic approximations of one local level
//   gofl mc-level     Monte Carlo level estimate of a stored test
//
// Exit status: 0 success; 1 numeric or file failure (the failing
// module's message goes to stderr); 2 usage error.
// Scalar results are printed as key=value lines with 17 significant
// digits.  The env var GOF_EXACT_LIMIT overrides the exact-computation
// size limit used by `calibrate`, which is the only subcommand that
// runs the counting recursion.

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "gofl/asymptotics.hpp"
#include "gofl/boundary_crossing.hpp"
#include "gofl/calibration.hpp"
#include "gofl/io.hpp"
#include "gofl/local_levels.hpp"
#include "gofl/monte_carlo.hpp"
#include "gofl/test_families.hpp"

namespace {

using gofl::format_double;

constexpr const char* kUsage = R"(usage: gofl <subcommand> [flags]

subcommands:
  calibrate    --family {ks|hc|ell} --n N --alpha A [--sided {1|2}]
               [--emit testdef.csv]
  local-levels --from testdef.csv [--out profile.csv]
  curves       --n N --d D --grid K [--out curves.csv]
  test         --from testdef.csv --data sample.txt
  approx       --i I --n N --t T [--regime R] [--scale C]
  mc-level     --from testdef.csv --reps R --seed S

environment:
  GOF_EXACT_LIMIT  overrides the exact-computation size limit (calibrate)
)";

// Usage errors exit with status 2; every other failure (numeric
// preconditions, unreadable files) surfaces as the throwing module's
// exception and exits with status 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class FlagMap {
 public:
  FlagMap(int argc, char** argv, int first) {
    for (int k = first; k < argc; ++k) {
      const std::string key = argv[k];
      if (key.rfind("--", 0) != 0 || key.size() <= 2) {
        throw UsageError("expected --flag, got '" + key + "'");
      }
      if (k + 1 >= argc) {
        throw UsageError("flag '" + key + "' is missing its value");
      }
      const std::string name = key.substr(2);
      if (!values_.emplace(name, argv[k + 1]).second) {
        throw UsageError("duplicate flag '--" + name + "'");
      }
      ++k;
    }
  }

  std::optional<std::string> get(const std::string& name) {
    const auto it = values_.find(name);
    if (it == values_.end()) return std::nullopt;
    seen_.insert(it->first);
    return it->second;
  }

  std::string require(const std::string& name) {
    auto value = get(name);
    if (!value) throw UsageError("missing required flag '--" + name + "'");
    return *value;
  }

  // Called after all flags are consumed; any leftover flag is a typo.
  void reject_unknown() const {
    for (const auto& [name, value] : values_) {
      if (seen_.find(name) == seen_.end()) {
        throw UsageError("unknown flag '--" + name + "'");
      }
    }
  }

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> seen_;
};

double parse_double_flag(const std::string& text, const std::string& flag) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || text.empty() || errno == ERANGE) {
    throw UsageError("flag '--" + flag + "' needs a number, got '" + text +
                     "'");
  }
  return value;
}

std::int64_t parse_int_flag(const std::string& text, const std::string& flag) {
  errno = 0;
  char* end = nullptr;
  const long long value = std::strtoll(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size() || text.empty() || errno == ERANGE) {
    throw UsageError("flag '--" + flag + "' needs an integer, got '" + text +
                     "'");
  }
  return static_cast<std::int64_t>(value);
}

gofl::Sided parse_sided_flag(const std::string& text) {
  if (text == "1") return gofl::Sided::kOne;
  if (text == "2") return gofl::Sided::kTwo;
  throw UsageError("flag '--sided' must be 1 or 2, got '" + text + "'");
}

// GOF_EXACT_LIMIT, when set, replaces the default exact-computation
// size limit.  A malformed value is a usage error: silently ignoring it
// would run a computation the caller tried to bound.
gofl::CrossingOptions crossing_options_from_env() {
  gofl::CrossingOptions options;
  const char* raw = std::getenv("GOF_EXACT_LIMIT");
  if (raw == nullptr) return options;
  errno = 0;
  char* end = nullptr;
  const long long value = std::strtoll(raw, &end, 10);
  if (*raw == '\0' || end != raw + std::string(raw).size() ||
      errno == ERANGE || value < 1) {
    throw UsageError(std::string("GOF_EXACT_LIMIT must be a positive "
                                 "integer, got '") +
                     raw + "'");
  }
  options.exact_limit = static_cast<std::int64_t>(value);
  return options;
}

void print_kv(const std::string& key, const std::string& value) {
  std::cout << key << '=' << value << '\n';
}

void print_kv(const std::string& key, double value) {
  print_kv(key, format_double(value));
}

int run_calibrate(FlagMap& flags) {
  const std::string family = flags.require("family");
  const std::int64_t n = parse_int_flag(flags.require("n"), "n");
  const double alpha = parse_double_flag(flags.require("alpha"), "alpha");
  const auto sided_text = flags.get("sided");
  const gofl::Sided sided =
      sided_text ? parse_sided_flag(*sided_text) : gofl::Sided::kOne;
  const auto emit = flags.get("emit");
  flags.reject_unknown();

  const gofl::CrossingOptions options = crossing_options_from_env();
  gofl::CalibrationResult result;
  if (family == "ks") {
    if (sided == gofl::Sided::kTwo) {
      throw UsageError("family ks is defined one-sided; drop --sided 2");
    }
    result = gofl::calibrate_ks(n, alpha, options);
  } else if (family == "hc") {
    result = gofl::calibrate_hc(n, alpha, sided, options);
  } else if (family == "ell") {
    result = gofl::calibrate_ell(n, alpha, sided, options);
  } else {
    throw UsageError("flag '--family' must be ks, hc, or ell, got '" +
                     family + "'");
  }

  print_kv("family", gofl::family_name(result.family));
  print_kv("n", std::to_string(result.n));
  print_kv("alpha", result.alpha);
  print_kv("parameter", result.parameter);
  print_kv("achieved_level", result.achieved_level);
  print_kv("iterations", std::to_string(result.iterations));
  print_kv("bracket_width", result.bracket_width);
  if (emit) {
    gofl::write_test_definition_file(
        *emit, gofl::make_test_definition(result.family, n, result.parameter));
    print_kv("emitted", *emit);
  }
  return 0;
}

int run_local_levels(FlagMap& flags) {
  const std::string from = flags.require("from");
  const auto out = flags.get("out");
  flags.reject_unknown();

  const gofl::TestDefinition test = gofl::read_test_definition_file(from);
  const gofl::LocalLevelProfile profile = test.two_sided()
                                              ? gofl::local_levels_two_sided(test)
                                              : gofl::local_levels_one_sided(test);
  if (out) {
    gofl::write_local_level_profile_file(*out, profile);
  } else {
    gofl::write_local_level_profile_csv(profile, std::cout);
  }
  return 0;
}

int run_curves(FlagMap& flags) {
  const std::int64_t n = parse_int_flag(flags.require("n"), "n");
  const double d = parse_double_flag(flags.require("d"), "d");
  const std::int64_t grid = parse_int_flag(flags.require("grid"), "grid");
  const auto out = flags.get("out");
  flags.reject_unknown();

  if (out) {
    std::ofstream file(*out);
    if (!file) {
      throw std::runtime_error("cannot open '" + *out + "' for writing");
    }
    gofl::write_curves_csv(file, n, d, grid);
  } else {
    gofl::write_curves_csv(std::cout, n, d, grid);
  }
  return 0;
}

int run_test(FlagMap& flags) {
  const std::string from = flags.require("from");
  const std::string data = flags.require("data");
  flags.reject_unknown();

  const gofl::TestDefinition test = gofl::read_test_definition_file(from);
  const gofl::Sample sample = gofl::read_sample_file(data);
  const gofl::EvaluationResult result = gofl::evaluate_test(test, sample);
  const gofl::MinPStatistics minp = gofl::minp_statistics(sample);
  const gofl::HcStatistics hc = gofl::hc_statistics(sample);

  print_kv("n", std::to_string(sample.n()));
  print_kv("decision", result.reject ? "reject" : "accept");
  print_kv("first_violation", result.first_violation
                                  ? std::to_string(*result.first_violation)
                                  : std::string("none"));
  print_kv("m_plus", minp.m_plus);
  print_kv("m", minp.m);
  print_kv("hc_plus", hc.hc_plus);
  print_kv("hc_eq", hc.hc_eq);
  return 0;
}

int run_approx(FlagMap& flags) {
  const std::int64_t i = parse_int_flag(flags.require("i"), "i");
  const std::int64_t n = parse_int_flag(flags.require("n"), "n");
  const double t = parse_double_flag(flags.require("t"), "t");
  const auto regime_text = flags.get("regime");
  const auto scale_text = flags.get("scale");
  flags.reject_unknown();

  gofl::RankRegime regime;
  if (regime_text) {
    gofl::RegimeTag tag;
    if (!gofl::parse_regime_tag(*regime_text, &tag)) {
      throw UsageError("flag '--regime' must name a regime (e.g. central, "
                       "edge-left), got '" + *regime_text + "'");
    }
    if (gofl::regime_tag_is_scaled(tag)) {
      double scale = 0.0;
      if (scale_text) {
        scale = parse_double_flag(*scale_text, "scale");
      } else {
        // Derive the finite-n scale the way classify_rank orients it.
        const double u = std::log(std::log(static_cast<double>(n)));
        const double side = static_cast<double>(
            tag == gofl::RegimeTag::kEdgeLeft ||
                    tag == gofl::RegimeTag::kBandLeftScaled
                ? i
                : n - i);
        switch (tag) {
          case gofl::RegimeTag::kEdgeLeft: scale = u / side; break;
          case gofl::RegimeTag::kEdgeRight: scale = side / u; break;
          default: scale = side / (u * u * u); break;
        }
      }
      regime = gofl::make_regime(tag, scale);
    } else {
      if (scale_text) {
        throw UsageError("flag '--scale' applies only to scaled regimes");
      }
      regime = gofl::make_regime(tag);
    }
  } else {
    if (scale_text) {
      throw UsageError("flag '--scale' needs an explicit '--regime'");
    }
    regime = gofl::classify_rank(i, n);
  }

  print_kv("i", std::to_string(i));
  print_kv("n", std::to_string(n));
  print_kv("t", t);
  print_kv("regime", gofl::regime_tag_name(regime.tag));
  if (regime.scale) print_kv("scale", *regime.scale);

  // Exact targets: the boundary value h and the exact local level.
  const double d = gofl::hc_threshold(n, t).d;
  const double h = gofl::hc_lower_boundary(i, n, d);
  const double exact_log = gofl::log_beta_cdf(i, n, h);
  print_kv("exact_boundary", h);
  print_kv("exact_log_level", exact_log);

  // Boundary expansion approximates n h / i on the linear scale.
  const double exact_ratio =
      static_cast<double>(n) * h / static_cast<double>(i);
  try {
    const gofl::ApproxValue value = gofl::h_expansion(i, n, t, regime);
    print_kv("boundary_formula", value.formula_id);
    print_kv("boundary_value", value.value);
    print_kv("boundary_ratio", value.value / exact_ratio);
  } catch (const std::exception& error) {
    print_kv("boundary_value", "n/a (" + std::string(error.what()) + ")");
  }

  const auto report_level = [&](const char* prefix,
                                const gofl::ApproxValue& value) {
    print_kv(std::string(prefix) + "_formula", value.formula_id);
    print_kv(std::string(prefix) + "_log_level", value.value);
    print_kv(std::string(prefix) + "_ratio", std::exp(value.value - exact_log));
  };
  try {
    report_level("poisson", gofl::local_level_poisson_approx(i, n, t, regime));
  } catch (const std::exception& error) {
    print_kv("poisson_log_level", "n/a (" + std::string(error.what()) + ")");
  }
  try {
    report_level("normal", gofl::local_level_normal_approx(i, n, t, regime));
  } catch (const std::exception& error) {
    print_kv("normal_log_level", "n/a (" + std::string(error.what()) + ")");
  }
  try {
    report_level("asymptotic", gofl::local_level_asymptotic(i, n, t, regime));
  } catch (const std::exception& error) {
    print_kv("asymptotic_log_level",
             "n/a (" + std::string(error.what()) + ")");
  }
  return 0;
}

int run_mc_level(FlagMap& flags) {
  const std::string from = flags.require("from");
  const std::int64_t reps = parse_int_flag(flags.require("reps"), "reps");
  const std::int64_t seed_value =
      parse_int_flag(flags.require("seed"), "seed");
  flags.reject_unknown();

  const gofl::TestDefinition test = gofl::read_test_definition_file(from);
  const gofl::McLevelEstimate estimate = gofl::mc_level_estimate(
      test, reps, static_cast<std::uint64_t>(seed_value));
  print_kv("estimate", estimate.estimate);
  print_kv("standard_error", estimate.standard_error);
  print_kv("rejections", std::to_string(estimate.rejections));
  print_kv("reps", std::to_string(estimate.reps));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    if (argc < 2) throw UsageError("missing subcommand");
    const std::string subcommand = argv[1];
    FlagMap flags(argc, argv, 2);
    if (subcommand == "calibrate") return run_calibrate(flags);
    if (subcommand == "local-levels") return run_local_levels(flags);
    if (subcommand == "curves") return run_curves(flags);
    if (subcommand == "test") return run_test(flags);
    if (subcommand == "approx") return run_approx(flags);
    if (subcommand == "mc-level") return run_mc_level(flags);
    throw UsageError("unknown subcommand '" + subcommand + "'");
  } catch (const UsageError& error) {
    std::cerr << "gofl: " << error.what() << "\n" << kUsage;
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "gofl: " << error.what() << "\n";
    return 1;
  }
}
