#pragma once

// Reference computations kept apart from the library code paths.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "tropreal/curve.hpp"
#include "tropreal/exactmath.hpp"

namespace oracle {

using tropreal::Integer;
using tropreal::IntMatrix;
using tropreal::Rational;

// Determinant by Gaussian elimination over Q.
inline Integer det(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return Integer(d);
}

inline void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> s(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      f(s);
      return;
    }
    for (std::size_t i = start; i + (k - depth) <= n; ++i) {
      s[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

// gcd of all k x k minors.
inline Integer determinantal_divisor(const IntMatrix& A, std::size_t k) {
  Integer g = 0;
  subsets(A.rows(), k, [&](const std::vector<std::size_t>& rs) {
    subsets(A.cols(), k, [&](const std::vector<std::size_t>& cs) {
      std::vector<std::vector<Integer>> m(k, std::vector<Integer>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = A(rs[i], cs[j]);
      Integer d = det(m);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    });
  });
  return g;
}

// Number of y in (Z/L)^n with A y = 0 mod L.
inline std::uint64_t count_mod(const IntMatrix& A, long L) {
  const std::size_t n = A.cols();
  std::vector<long> y(n, 0);
  std::uint64_t count = 0;
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < A.rows() && ok; ++i) {
      Integer s = 0;
      for (std::size_t j = 0; j < n; ++j) s += A(i, j) * y[j];
      ok = (s % L) == 0;
    }
    if (ok) ++count;
    std::size_t j = 0;
    while (j < n && ++y[j] == L) y[j++] = 0;
    if (j == n) break;
  }
  return count;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix A(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) A(i, j) = d(rng);
  return A;
}

// Theta graph u -> v with outgoing vectors m1, m2, m3 at u (m1 + m2 + m3 = 0),
// unit lengths, periods m2 - m1 and m3 - m1.
inline tropreal::TropicalCurve theta_from(const tropreal::Vec2i& m1, const tropreal::Vec2i& m2,
                                          const tropreal::Vec2i& m3,
                                          tropreal::Multipliers mult = tropreal::formal_multipliers()) {
  using namespace tropreal;
  PeriodLattice lat{m2 - m1, m3 - m1, std::move(mult)};
  std::vector<TropicalVertex> vs{{"u", {0, 0}}, {"v", to_rational(m1)}};
  std::vector<TropicalEdge> es{{"e1", "u", "v", m1, 1, {0, 0}},
                               {"e2", "u", "v", m2, 1, {-1, 0}},
                               {"e3", "u", "v", m3, 1, {0, -1}}};
  return TropicalCurve(lat, vs, es);
}

}  // namespace oracle
