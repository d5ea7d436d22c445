#pragma once

// Exact integers, rationals and integer lattice normal forms.
//
// Integers and rationals are GMP's C++ classes. Every Rational handed out by
// this module is canonical (reduced, positive denominator); code that builds
// an mpq_class by hand must call canonicalize() or go through make_rational().

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tropreal {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);
std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

Integer floor(const Rational& x);
/// x - floor(x), in [0, 1).
Rational frac(const Rational& x);
Integer gcd(const Integer& a, const Integer& b);
Integer abs(const Integer& x);
int sign(const Integer& x);
/// Exact quotient; throws DomainError if b does not divide a.
Integer exact_div(const Integer& a, const Integer& b);
/// Representative of a mod m in [0, |m|).
Integer mod_floor(const Integer& a, const Integer& m);

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const Integer> entries() const noexcept { return entries_; }
  std::vector<Integer> row(std::size_t i) const;
  std::vector<Integer> col(std::size_t j) const;

  IntMatrix transpose() const;
  bool is_zero() const;
  std::vector<Integer> apply(std::span<const Integer> x) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t i);
  void append_row(std::span<const Integer> row);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

struct ExtGcd {
  Integer g;
  Integer x;
  Integer y;
};

/// g = gcd(a, b) >= 0 with a*x + b*y = g; (0, 0) maps to (0, 0, 0).
ExtGcd ext_gcd(const Integer& a, const Integer& b);

struct HnfResult {
  IntMatrix H;
  IntMatrix U;
};

/// Row Hermite normal form: U unimodular, U*A = H, pivots positive, entries
/// above a pivot reduced into [0, pivot), zero rows last.
HnfResult hnf(const IntMatrix& A);

struct SnfResult {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;

  /// The min(rows, cols) diagonal entries of S.
  std::vector<Integer> diagonal() const;
  std::size_t rank() const;
};

/// Smith normal form U*A*V = S with d1 | d2 | ... | dr, trailing zeros, all d >= 0.
SnfResult snf(const IntMatrix& A);

/// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t rank_rational(const IntMatrix& A);

/// Determinant of a square matrix by Bareiss elimination.
Integer determinant(const IntMatrix& A);

struct DiophantineSolution {
  std::vector<Integer> particular;
  std::vector<std::vector<Integer>> kernel_basis;
};

/// Integer solutions of A*x = b: a particular solution plus a basis of the
/// integer kernel, or nullopt when no integer solution exists.
std::optional<DiophantineSolution> linear_diophantine_solve(const IntMatrix& A,
                                                            std::span<const Integer> b);

/// Basis of { x in Q^cols : A*x = 0 } from the reduced row echelon form.
std::vector<std::vector<Rational>> nullspace_rational(const IntMatrix& A);

/// Rank over Q of a rational matrix given as rows.
std::size_t rank_rational(const std::vector<std::vector<Rational>>& rows);

}  // namespace tropreal
