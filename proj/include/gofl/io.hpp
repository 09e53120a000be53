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

#ifndef GOFL_IO_HPP_
#define GOFL_IO_HPP_

// File formats for test definitions, local-level profiles, critical-value
// curves, and sample data.
//
//   testdef CSV   header `i,lower,upper`, one row per rank; one-sided
//                 tests leave the upper field empty.  The generating
//                 recipe rides along as `# family=...` / `# parameter=...`
//                 comment lines; files without them read back as custom
//                 tests.  The boundary rows are authoritative.
//   profile CSV   header `i,alpha_one,alpha_two`; one-sided profiles
//                 leave alpha_two empty.
//   curves CSV    header `x,rho,rho_tilde,r,r_tilde`, evaluated on the
//                 grid x = j/K, j = 1..K.
//   sample text   one value per line, `#` comments, blank lines ignored.
//                 An optional `# f0: <name>` header (before any value)
//                 selects a transform to the uniform scale: `none` (the
//                 default; values must already lie in [0, 1]) or `table`
//                 (piecewise-linear c.d.f. given by `# knot: x p` lines).
//
// All numbers are written with 17 significant digits, which round-trips
// IEEE doubles exactly: reading a written testdef or profile reproduces
// the in-memory object bit for bit.  Errors carry the source name and
// 1-based line number.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gofl/local_levels.hpp"
#include "gofl/test_families.hpp"

namespace gofl {

// Shortest-exact decimal form used for every value in the CSV formats:
// 17 significant digits always reconstruct the same double.
inline std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace detail {

[[noreturn]] inline void io_fail(const std::string& source, std::int64_t line,
                                 const std::string& message) {
  throw std::runtime_error(source + ": line " + std::to_string(line) + ": " +
                           message);
}

inline std::string strip_carriage_return(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = text.find_last_not_of(" \t");
  return text.substr(first, last - first + 1);
}

inline double parse_double(const std::string& field,
                           const std::string& source, std::int64_t line) {
  const std::string token = trim(field);
  if (token.empty()) io_fail(source, line, "empty numeric field");
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size()) {
    io_fail(source, line, "not a number: '" + token + "'");
  }
  if (errno == ERANGE && (value > 1.0 || value < -1.0)) {
    io_fail(source, line, "number out of range: '" + token + "'");
  }
  return value;
}

inline std::int64_t parse_rank(const std::string& field,
                               const std::string& source, std::int64_t line) {
  const std::string token = trim(field);
  if (token.empty()) io_fail(source, line, "empty rank field");
  errno = 0;
  char* end = nullptr;
  const long long value = std::strtoll(token.c_str(), &end, 10);
  if (end != token.c_str() + token.size() || errno == ERANGE) {
    io_fail(source, line, "not a rank: '" + token + "'");
  }
  return static_cast<std::int64_t>(value);
}

inline bool parse_family_name(const std::string& name, Family* family) {
  const Family all[] = {Family::kKs,     Family::kHcOne, Family::kHcTwo,
                        Family::kEllOne, Family::kEllTwo, Family::kCustom};
  for (Family f : all) {
    if (name == family_name(f)) {
      *family = f;
      return true;
    }
  }
  return false;
}

// `# key=value` sidecar comment; returns true and fills key/value when
// the comment line has that shape.
inline bool parse_sidecar(const std::string& line, std::string* key,
                          std::string* value) {
  std::string body = trim(line.substr(1));
  const auto eq = body.find('=');
  if (eq == std::string::npos) return false;
  *key = trim(body.substr(0, eq));
  *value = trim(body.substr(eq + 1));
  return !key->empty();
}

inline void check_unit_range(double value, const char* what,
                             const std::string& source, std::int64_t line) {
  if (!(value >= 0.0) || !(value <= 1.0)) {
    io_fail(source, line,
            std::string(what) + " " + format_double(value) +
                " outside [0, 1]");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Test definitions.

inline void write_test_definition_csv(const TestDefinition& test,
                                      std::ostream& out) {
  out << "# family=" << family_name(test.family) << "\n";
  out << "# parameter=" << format_double(test.parameter) << "\n";
  out << "i,lower,upper\n";
  const bool two = test.two_sided();
  for (std::int64_t i = 1; i <= test.n; ++i) {
    out << i << ',' << format_double(test.lower[static_cast<std::size_t>(i - 1)])
        << ',';
    if (two) out << format_double(test.upper[static_cast<std::size_t>(i - 1)]);
    out << "\n";
  }
}

inline TestDefinition read_test_definition_csv(std::istream& in,
                                               const std::string& source) {
  TestDefinition test;
  test.family = Family::kCustom;
  test.parameter = 0.0;
  bool header_seen = false;
  bool upper_known = false;
  bool has_upper = false;
  std::int64_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_carriage_return(line);
    const std::string trimmed = detail::trim(line);
    if (trimmed.empty()) continue;
    if (trimmed.front() == '#') {
      std::string key, value;
      if (detail::parse_sidecar(trimmed, &key, &value)) {
        if (key == "family") {
          if (!detail::parse_family_name(value, &test.family)) {
            detail::io_fail(source, line_no, "unknown family '" + value + "'");
          }
        } else if (key == "parameter") {
          test.parameter = detail::parse_double(value, source, line_no);
        }
        // Other sidecar keys are ignored.
      }
      continue;
    }
    if (!header_seen) {
      if (trimmed != "i,lower,upper") {
        detail::io_fail(source, line_no,
                        "expected header 'i,lower,upper', got '" + trimmed +
                            "'");
      }
      header_seen = true;
      continue;
    }
    const std::vector<std::string> fields = detail::split_csv(line);
    if (fields.size() != 3) {
      detail::io_fail(source, line_no,
                      "expected 3 fields, got " +
                          std::to_string(fields.size()));
    }
    const std::int64_t rank = detail::parse_rank(fields[0], source, line_no);
    const std::int64_t expected =
        static_cast<std::int64_t>(test.lower.size()) + 1;
    if (rank != expected) {
      detail::io_fail(source, line_no,
                      "rank out of order (expected " +
                          std::to_string(expected) + ", got " +
                          std::to_string(rank) + ")");
    }
    const double lower = detail::parse_double(fields[1], source, line_no);
    detail::check_unit_range(lower, "lower bound", source, line_no);
    const bool row_has_upper = !detail::trim(fields[2]).empty();
    if (!upper_known) {
      upper_known = true;
      has_upper = row_has_upper;
    } else if (row_has_upper != has_upper) {
      detail::io_fail(source, line_no,
                      "mixed one- and two-sided rows (upper field must be "
                      "consistently empty or present)");
    }
    test.lower.push_back(lower);
    if (row_has_upper) {
      const double upper = detail::parse_double(fields[2], source, line_no);
      detail::check_unit_range(upper, "upper bound", source, line_no);
      if (!(lower < upper)) {
        detail::io_fail(source, line_no, "bounds cross (lower >= upper)");
      }
      test.upper.push_back(upper);
    }
  }
  if (!header_seen) {
    detail::io_fail(source, line_no + 1, "missing header 'i,lower,upper'");
  }
  if (test.lower.empty()) {
    detail::io_fail(source, line_no + 1, "no boundary rows");
  }
  test.n = static_cast<std::int64_t>(test.lower.size());
  return test;
}

// ---------------------------------------------------------------------------
// Local-level profiles.

inline void write_local_level_profile_csv(const LocalLevelProfile& profile,
                                          std::ostream& out) {
  out << "i,alpha_one,alpha_two\n";
  const bool two = !profile.two_sided.empty();
  for (std::int64_t i = 1; i <= profile.n; ++i) {
    out << i << ','
        << format_double(profile.one_sided[static_cast<std::size_t>(i - 1)])
        << ',';
    if (two) {
      out << format_double(profile.two_sided[static_cast<std::size_t>(i - 1)]);
    }
    out << "\n";
  }
}

inline LocalLevelProfile read_local_level_profile_csv(
    std::istream& in, const std::string& source) {
  LocalLevelProfile profile;
  bool header_seen = false;
  bool two_known = false;
  bool has_two = false;
  std::int64_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_carriage_return(line);
    const std::string trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    if (!header_seen) {
      if (trimmed != "i,alpha_one,alpha_two") {
        detail::io_fail(source, line_no,
                        "expected header 'i,alpha_one,alpha_two', got '" +
                            trimmed + "'");
      }
      header_seen = true;
      continue;
    }
    const std::vector<std::string> fields = detail::split_csv(line);
    if (fields.size() != 3) {
      detail::io_fail(source, line_no,
                      "expected 3 fields, got " +
                          std::to_string(fields.size()));
    }
    const std::int64_t rank = detail::parse_rank(fields[0], source, line_no);
    const std::int64_t expected =
        static_cast<std::int64_t>(profile.one_sided.size()) + 1;
    if (rank != expected) {
      detail::io_fail(source, line_no,
                      "rank out of order (expected " +
                          std::to_string(expected) + ", got " +
                          std::to_string(rank) + ")");
    }
    const double one = detail::parse_double(fields[1], source, line_no);
    detail::check_unit_range(one, "local level", source, line_no);
    const bool row_has_two = !detail::trim(fields[2]).empty();
    if (!two_known) {
      two_known = true;
      has_two = row_has_two;
    } else if (row_has_two != has_two) {
      detail::io_fail(source, line_no,
                      "mixed one- and two-sided rows (alpha_two must be "
                      "consistently empty or present)");
    }
    profile.one_sided.push_back(one);
    if (row_has_two) {
      const double two = detail::parse_double(fields[2], source, line_no);
      detail::check_unit_range(two, "local level", source, line_no);
      profile.two_sided.push_back(two);
    }
  }
  if (!header_seen) {
    detail::io_fail(source, line_no + 1,
                    "missing header 'i,alpha_one,alpha_two'");
  }
  if (profile.one_sided.empty()) {
    detail::io_fail(source, line_no + 1, "no profile rows");
  }
  profile.n = static_cast<std::int64_t>(profile.one_sided.size());
  return profile;
}

// ---------------------------------------------------------------------------
// Critical-value curves.

// Writes the four critical-value curves on the grid x = j/K, j = 1..K.
// The grid must not be finer than n points: rho_tilde needs n x >= 1.
inline void write_curves_csv(std::ostream& out, std::int64_t n, double d,
                             std::int64_t grid) {
  if (grid < 1) {
    throw std::invalid_argument("write_curves_csv: grid must be >= 1");
  }
  if (grid > n) {
    throw std::invalid_argument(
        "write_curves_csv: grid finer than n (rho_tilde needs x >= 1/n)");
  }
  out << "x,rho,rho_tilde,r,r_tilde\n";
  for (std::int64_t j = 1; j <= grid; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(grid);
    out << format_double(x) << ','
        << format_double(curve_eval(CurveKind::kRho, x, n, d)) << ','
        << format_double(curve_eval(CurveKind::kRhoTilde, x, n, d)) << ','
        << format_double(curve_eval(CurveKind::kR, x, n, d)) << ','
        << format_double(curve_eval(CurveKind::kRTilde, x, n, d)) << "\n";
  }
}

// ---------------------------------------------------------------------------
// Sample files.

// Reads a sample file: one value per line, `#` comments and blank lines
// ignored.  Before the first value an optional `# f0: none|table` header
// selects the transform to the uniform scale; `table` takes its
// piecewise-linear c.d.f. from `# knot: x p` lines (at least two knots,
// x strictly increasing, p non-decreasing within [0, 1]) and maps each
// value by interpolation.  Every resulting value must lie in [0, 1];
// violations report the offending line.  Ties are allowed.
inline Sample read_sample_text(std::istream& in, const std::string& source) {
  enum class Transform { kNone, kTable };
  Transform transform = Transform::kNone;
  bool transform_declared = false;
  bool table_checked = false;
  std::vector<double> knot_x;
  std::vector<double> knot_p;
  std::vector<double> values;
  std::int64_t line_no = 0;
  std::string line;

  auto finalize_table = [&](std::int64_t at_line) {
    if (table_checked) return;
    table_checked = true;
    if (transform != Transform::kTable) return;
    if (knot_x.size() < 2) {
      detail::io_fail(source, at_line,
                      "f0 table needs at least 2 '# knot: x p' lines");
    }
    for (std::size_t k = 0; k < knot_x.size(); ++k) {
      if (!(knot_p[k] >= 0.0) || !(knot_p[k] <= 1.0)) {
        detail::io_fail(source, at_line,
                        "f0 table probability outside [0, 1]");
      }
      if (k > 0 && !(knot_x[k] > knot_x[k - 1])) {
        detail::io_fail(source, at_line,
                        "f0 table x-values must be strictly increasing");
      }
      if (k > 0 && !(knot_p[k] >= knot_p[k - 1])) {
        detail::io_fail(source, at_line,
                        "f0 table probabilities must be non-decreasing");
      }
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_carriage_return(line);
    const std::string trimmed = detail::trim(line);
    if (trimmed.empty()) continue;
    if (trimmed.front() == '#') {
      const std::string body = detail::trim(trimmed.substr(1));
      if (body.rfind("f0:", 0) == 0) {
        if (!values.empty()) {
          detail::io_fail(source, line_no,
                          "f0 header must precede all sample values");
        }
        if (transform_declared) {
          detail::io_fail(source, line_no, "duplicate f0 header");
        }
        transform_declared = true;
        const std::string name = detail::trim(body.substr(3));
        if (name == "none") {
          transform = Transform::kNone;
        } else if (name == "table") {
          transform = Transform::kTable;
        } else {
          detail::io_fail(source, line_no,
                          "unknown f0 transform '" + name +
                              "' (built-ins: none, table)");
        }
      } else if (body.rfind("knot:", 0) == 0) {
        if (transform != Transform::kTable) {
          detail::io_fail(source, line_no,
                          "'# knot:' requires a preceding '# f0: table'");
        }
        if (!values.empty()) {
          detail::io_fail(source, line_no,
                          "knot lines must precede all sample values");
        }
        std::istringstream pair(body.substr(5));
        double x = 0.0, p = 0.0;
        std::string rest;
        if (!(pair >> x >> p) || (pair >> rest)) {
          detail::io_fail(source, line_no,
                          "expected '# knot: x p' with two numbers");
        }
        knot_x.push_back(x);
        knot_p.push_back(p);
      }
      continue;
    }
    // A data line: exactly one number.
    finalize_table(line_no);
    const double raw = detail::parse_double(trimmed, source, line_no);
    double value = raw;
    if (transform == Transform::kTable) {
      if (!(raw >= knot_x.front()) || !(raw <= knot_x.back())) {
        detail::io_fail(source, line_no,
                        "value " + format_double(raw) +
                            " outside the f0 table range [" +
                            format_double(knot_x.front()) + ", " +
                            format_double(knot_x.back()) + "]");
      }
      std::size_t k = 1;
      while (k + 1 < knot_x.size() && raw > knot_x[k]) ++k;
      const double span = knot_x[k] - knot_x[k - 1];
      const double fraction = (raw - knot_x[k - 1]) / span;
      value = knot_p[k - 1] + fraction * (knot_p[k] - knot_p[k - 1]);
    }
    if (!(value >= 0.0) || !(value <= 1.0)) {
      detail::io_fail(source, line_no,
                      "value " + format_double(value) + " outside [0, 1]");
    }
    values.push_back(value);
  }
  if (values.empty()) {
    detail::io_fail(source, line_no + 1, "no sample values");
  }
  return Sample(std::move(values));
}

// ---------------------------------------------------------------------------
// File-path conveniences.

namespace detail {

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "' for reading");
  }
  return in;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  return out;
}

}  // namespace detail

inline TestDefinition read_test_definition_file(const std::string& path) {
  std::ifstream in = detail::open_input(path);
  return read_test_definition_csv(in, path);
}

inline void write_test_definition_file(const std::string& path,
                                       const TestDefinition& test) {
  std::ofstream out = detail::open_output(path);
  write_test_definition_csv(test, out);
  if (!out.good()) {
    throw std::runtime_error("write to '" + path + "' failed");
  }
}

inline LocalLevelProfile read_local_level_profile_file(
    const std::string& path) {
  std::ifstream in = detail::open_input(path);
  return read_local_level_profile_csv(in, path);
}

inline void write_local_level_profile_file(const std::string& path,
                                           const LocalLevelProfile& profile) {
  std::ofstream out = detail::open_output(path);
  write_local_level_profile_csv(profile, out);
  if (!out.good()) {
    throw std::runtime_error("write to '" + path + "' failed");
  }
}

inline Sample read_sample_file(const std::string& path) {
  std::ifstream in = detail::open_input(path);
  return read_sample_text(in, path);
}

}  // namespace gofl

#endif  // GOFL_IO_HPP_
