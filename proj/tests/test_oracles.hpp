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

#ifndef GOFL_TESTS_TEST_ORACLES_HPP_
#define GOFL_TESTS_TEST_ORACLES_HPP_

// Independent reference implementations used only by the test suite to
// cross-check the production counting dynamic program.  Both oracles
// compute P(a_i < U_{i:n} < b_i for all i) for sorted uniforms by methods
// that share no code and no algorithmic idea with the production DP:
//
//  * steck_probability: the classical determinant formula
//      P = n! * det(D),  D[i][j] = (b_i - a_j)_+^{j-i+1} / (j-i+1)!
//    for j >= i-1 (zero below that band).  Exact mathematics; evaluated
//    with long-double LU decomposition, trustworthy for n up to ~12.
//
//  * ordered_quadrature_probability: exact recursive integration of the
//    constrained ordered-uniform density.  The inner integrals are kept
//    as piecewise polynomials and integrated symbolically, so the only
//    error is long-double roundoff on degree-<=n polynomials.
//
// Also provided: a deterministic little RNG for generating reproducible
// random boundaries in tests (independent of the library's generator).

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gofl::testing {

// ---------------------------------------------------------------------------
// Determinant oracle.

inline long double steck_probability(const std::vector<double>& a,
                                     const std::vector<double>& b) {
  const std::size_t n = a.size();
  if (b.size() != n || n == 0) {
    throw std::invalid_argument("steck_probability: bad sizes");
  }
  std::vector<long double> fact(n + 2, 1.0L);
  for (std::size_t k = 1; k < fact.size(); ++k) {
    fact[k] = fact[k - 1] * static_cast<long double>(k);
  }
  // Row i, column j (0-based): exponent e = j - i + 1; entries with e < 0
  // vanish, entries with b_i <= a_j vanish, e = 0 entries are 1.
  std::vector<std::vector<long double>> m(n, std::vector<long double>(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j + 1 < i) continue;
      const long double val =
          static_cast<long double>(b[i]) - static_cast<long double>(a[j]);
      if (val <= 0.0L) continue;
      const std::size_t e = j - i + 1;
      long double p = 1.0L;
      for (std::size_t t = 0; t < e; ++t) p *= val;
      m[i][j] = p / fact[e];
    }
  }
  // LU with partial pivoting.
  long double det = 1.0L;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    if (m[piv][col] == 0.0L) return 0.0L;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const long double f = m[r][col] / m[col][col];
      if (f == 0.0L) continue;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return fact[n] * det;
}

// ---------------------------------------------------------------------------
// Exact piecewise-polynomial integration oracle.

namespace detail {

// Polynomial piece: value(t) = sum coef[k] * (t - lo)^k on [lo, hi].
struct Piece {
  long double lo;
  long double hi;
  std::vector<long double> coef;
};

inline long double eval_poly(const std::vector<long double>& c,
                             long double s) {
  long double v = 0.0L;
  for (std::size_t k = c.size(); k-- > 0;) v = v * s + c[k];
  return v;
}

// Integral of the piece over its full span [lo, hi].
inline long double full_integral(const Piece& p) {
  const long double w = p.hi - p.lo;
  long double v = 0.0L;
  for (std::size_t k = p.coef.size(); k-- > 0;) {
    v = v * w + p.coef[k] / static_cast<long double>(k + 1);
  }
  return v * w;
}

// Integral of the piece from t (inside [lo, hi]) to hi.
inline long double integral_to_hi(const Piece& p, long double t) {
  auto anti = [&](long double u) {
    const long double s = u - p.lo;
    long double v = 0.0L;
    for (std::size_t k = p.coef.size(); k-- > 0;) {
      v = v * s + p.coef[k] / static_cast<long double>(k + 1);
    }
    return v * s;
  };
  return anti(p.hi) - anti(t);
}

// Taylor shift: given p(s) = sum c[j] s^j, return the coefficients of
// q(s) = p(delta + s).  Repeated in-place synthetic division by
// (x - delta); each pass deposits one coefficient of the shifted form.
inline std::vector<long double> shift_poly(const std::vector<long double>& c,
                                           long double delta) {
  const std::size_t d = c.size();
  std::vector<long double> w = c;
  std::vector<long double> out(d, 0.0L);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = d - 1; j > k; --j) {
      w[j - 1] += delta * w[j];
    }
    out[k] = w[k];
  }
  return out;
}

}  // namespace detail

// P(a_i < U_{i:n} < b_i for all i) by exact recursive integration.
inline long double ordered_quadrature_probability(const std::vector<double>& a,
                                                  const std::vector<double>& b) {
  using detail::Piece;
  const std::size_t n = a.size();
  if (b.size() != n || n == 0) {
    throw std::invalid_argument("ordered_quadrature_probability: bad sizes");
  }
  // H holds H_{k+1} as pieces covering [0, 1]; initially the constant 1.
  std::vector<Piece> H{{0.0L, 1.0L, {1.0L}}};
  for (std::size_t k = n; k-- > 0;) {
    const long double A = static_cast<long double>(a[k]);
    const long double B = static_cast<long double>(b[k]);
    // Restrict H to [0, B].
    std::vector<Piece> parts;
    for (const Piece& p : H) {
      if (p.lo >= B) break;
      Piece q = p;
      if (q.hi > B) q.hi = B;
      if (q.hi > q.lo) parts.push_back(q);
    }
    // suffix[j] = integral of H over (parts[j].hi, B].
    const std::size_t m = parts.size();
    std::vector<long double> suffix(m + 1, 0.0L);
    for (std::size_t j = m; j-- > 0;) {
      suffix[j] = suffix[j + 1] + detail::full_integral(parts[j]);
    }
    // C(t) = integral of H from t to B; build H_k(t) = C(max(t, A)) on
    // [0, B], zero on [B, 1].
    auto C_at = [&](long double t) {
      for (std::size_t j = 0; j < m; ++j) {
        if (t <= parts[j].hi || j + 1 == m) {
          if (t < parts[j].lo) t = parts[j].lo;
          return detail::integral_to_hi(parts[j], t) + suffix[j + 1];
        }
      }
      return 0.0L;
    };
    std::vector<Piece> next;
    if (A > 0.0L) {
      next.push_back({0.0L, std::min(A, B), {C_at(std::min(A, B))}});
    }
    for (std::size_t j = 0; j < m; ++j) {
      const long double lo = std::max(parts[j].lo, A);
      const long double hi = parts[j].hi;
      if (hi <= lo) continue;
      // On this stretch: value(t) = suffix[j+1] + anti(hi) - anti(t),
      // a polynomial in (t - parts[j].lo); re-center at lo.
      const Piece& p = parts[j];
      std::vector<long double> anti(p.coef.size() + 1, 0.0L);
      for (std::size_t t = 0; t < p.coef.size(); ++t) {
        anti[t + 1] = p.coef[t] / static_cast<long double>(t + 1);
      }
      const long double c0 =
          suffix[j + 1] + detail::eval_poly(anti, p.hi - p.lo);
      std::vector<long double> val = anti;
      for (long double& c : val) c = -c;
      val[0] += c0;
      std::vector<long double> shifted =
          detail::shift_poly(val, lo - p.lo);
      next.push_back({lo, hi, shifted});
    }
    if (B < 1.0L) next.push_back({B, 1.0L, {0.0L}});
    H.swap(next);
  }
  long double fact = 1.0L;
  for (std::size_t k = 2; k <= n; ++k) fact *= static_cast<long double>(k);
  // H_1 evaluated at 0: the first piece starts at 0.
  return fact * detail::eval_poly(H.front().coef, 0.0L - H.front().lo);
}

// ---------------------------------------------------------------------------
// Tiny deterministic RNG for reproducible test boundaries (64-bit LCG,
// top-53-bit uniforms); deliberately unrelated to the library generator.

class TinyRng {
 public:
  explicit TinyRng(std::uint64_t seed) : state_(seed * 2862933555777941757ULL + 3037000493ULL) {}
  double uniform() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state_ >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Random valid test boundaries: sorted lower values in [0, 1), an upper
// envelope that is nondecreasing, strictly above the lower one, in (0, 1].
inline void random_boundaries(TinyRng& rng, std::size_t n,
                              std::vector<double>* lower,
                              std::vector<double>* upper) {
  std::vector<double> raw(n);
  for (double& v : raw) v = 0.9 * rng.uniform();
  std::sort(raw.begin(), raw.end());
  *lower = raw;
  upper->assign(n, 1.0);
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double gap = (1.0 - raw[i]) * (0.25 + 0.65 * rng.uniform());
    prev = std::max(prev, raw[i] + gap);
    if (prev > 1.0) prev = 1.0;
    (*upper)[i] = prev;
  }
}

}  // namespace gofl::testing

#endif  // GOFL_TESTS_TEST_ORACLES_HPP_
