#include "tropreal/exactmath.hpp"

#include <algorithm>
#include <utility>

#include "tropreal/errors.hpp"

namespace tropreal {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  text = trim(text);
  if (!is_integer_literal(text)) throw ParseError("not an integer: '" + std::string(text) + "'");
  if (text.front() == '+') text.remove_prefix(1);
  return Integer(std::string(text), 10);
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const Integer num = parse_integer(text.substr(0, slash));
  const Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return make_rational(num, den);
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Integer floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rational frac(const Rational& x) {
  Rational r = x - Rational(floor(x));
  r.canonicalize();
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

int sign(const Integer& x) { return sgn(x); }

Integer exact_div(const Integer& a, const Integer& b) {
  if (b == 0) throw DomainError("division by zero");
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) {
    throw DomainError(a.get_str() + " is not divisible by " + b.get_str());
  }
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  if (m == 0) throw DomainError("modulus zero");
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), abs(m).get_mpz_t());
  return r;
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DomainError("ragged matrix literal");
    for (long v : r) entries_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DomainError("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Integer> IntMatrix::row(std::size_t i) const {
  return {entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<Integer> IntMatrix::col(std::size_t j) const {
  std::vector<Integer> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return x == 0; });
}

std::vector<Integer> IntMatrix::apply(std::span<const Integer> x) const {
  if (x.size() != cols_) throw DomainError("vector length does not match matrix columns");
  std::vector<Integer> y(rows_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::append_row(std::span<const Integer> row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw DomainError("row length mismatch");
  entries_.insert(entries_.end(), row.begin(), row.end());
  ++rows_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix shape mismatch in product");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

// ---------------------------------------------------------------------------
// gcd, HNF, SNF

ExtGcd ext_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), old_r.get_mpz_t(), r.get_mpz_t());
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  if (old_r == 0) return {0, 0, 0};
  return {old_r, old_s, old_t};
}

HnfResult hnf(const IntMatrix& A) {
  IntMatrix H = A;
  IntMatrix U = IntMatrix::identity(A.rows());
  std::size_t pivot_row = 0;
  for (std::size_t j = 0; j < H.cols() && pivot_row < H.rows(); ++j) {
    // Fold every entry below pivot_row into the pivot position by 2x2 unimodular steps.
    for (std::size_t i = pivot_row + 1; i < H.rows(); ++i) {
      if (H(i, j) == 0) continue;
      const Integer a = H(pivot_row, j);
      const Integer b = H(i, j);
      const ExtGcd e = ext_gcd(a, b);
      const Integer a_g = exact_div(a, e.g);
      const Integer b_g = exact_div(b, e.g);
      for (IntMatrix* M : {&H, &U}) {
        for (std::size_t c = 0; c < M->cols(); ++c) {
          const Integer top = (*M)(pivot_row, c);
          const Integer bottom = (*M)(i, c);
          (*M)(pivot_row, c) = e.x * top + e.y * bottom;
          (*M)(i, c) = -b_g * top + a_g * bottom;
        }
      }
    }
    if (H(pivot_row, j) == 0) continue;
    if (H(pivot_row, j) < 0) {
      H.negate_row(pivot_row);
      U.negate_row(pivot_row);
    }
    const Integer& p = H(pivot_row, j);
    for (std::size_t i = 0; i < pivot_row; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), H(i, j).get_mpz_t(), p.get_mpz_t());
      if (q == 0) continue;
      H.add_row_multiple(i, pivot_row, -q);
      U.add_row_multiple(i, pivot_row, -q);
    }
    ++pivot_row;
  }
  return {std::move(H), std::move(U)};
}

namespace {

/// Quotient rounded to nearest, so |a - q*b| <= |b|/2.
Integer nearest_quotient(const Integer& a, const Integer& b) {
  Integer q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (2 * abs(r) > abs(b)) q += 1;
  return q;
}

}  // namespace

std::vector<Integer> SnfResult::diagonal() const {
  const std::size_t n = std::min(S.rows(), S.cols());
  std::vector<Integer> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = S(i, i);
  return d;
}

std::size_t SnfResult::rank() const {
  std::size_t r = 0;
  for (const auto& d : diagonal())
    if (d != 0) ++r;
  return r;
}

SnfResult snf(const IntMatrix& A) {
  IntMatrix S = A;
  IntMatrix U = IntMatrix::identity(A.rows());
  IntMatrix V = IntMatrix::identity(A.cols());
  const std::size_t m = S.rows();
  const std::size_t n = S.cols();

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Minimal nonzero |entry| in the trailing block becomes the pivot.
    auto move_min_to_pivot = [&](bool whole_block) {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (!whole_block && i != t && j != t) continue;
          if (S(i, j) == 0) continue;
          if (bi == m || abs(S(i, j)) < abs(S(bi, bj))) {
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == m) return false;
      S.swap_rows(t, bi);
      U.swap_rows(t, bi);
      S.swap_cols(t, bj);
      V.swap_cols(t, bj);
      return true;
    };

    if (!move_min_to_pivot(true)) break;

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        const Integer q = nearest_quotient(S(i, t), S(t, t));
        S.add_row_multiple(i, t, -q);
        U.add_row_multiple(i, t, -q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        const Integer q = nearest_quotient(S(t, j), S(t, t));
        S.add_col_multiple(j, t, -q);
        V.add_col_multiple(j, t, -q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) {
        move_min_to_pivot(false);
        continue;
      }
      // Divisibility: pull an offending row into the pivot row and reduce again.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
            S.add_row_multiple(t, i, 1);
            U.add_row_multiple(t, i, 1);
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
  }
  return {std::move(U), std::move(S), std::move(V)};
}

std::size_t rank_rational(const IntMatrix& A) {
  IntMatrix M = A;
  const std::size_t m = M.rows();
  const std::size_t n = M.cols();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t j = 0; j < n && r < m; ++j) {
    std::size_t p = r;
    while (p < m && M(p, j) == 0) ++p;
    if (p == m) continue;
    M.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t k = j + 1; k < n; ++k) {
        M(i, k) = exact_div(M(r, j) * M(i, k) - M(i, j) * M(r, k), prev);
      }
      M(i, j) = 0;
    }
    prev = M(r, j);
    ++r;
  }
  return r;
}

Integer determinant(const IntMatrix& A) {
  if (A.rows() != A.cols()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  IntMatrix M = A;
  Integer prev = 1;
  int flips = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && M(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      M.swap_rows(k, p);
      ++flips;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        M(i, j) = exact_div(M(k, k) * M(i, j) - M(i, k) * M(k, j), prev);
      }
      M(i, k) = 0;
    }
    prev = M(k, k);
  }
  return (flips % 2) ? Integer(-M(n - 1, n - 1)) : M(n - 1, n - 1);
}

std::optional<DiophantineSolution> linear_diophantine_solve(const IntMatrix& A,
                                                            std::span<const Integer> b) {
  if (b.size() != A.rows()) throw DomainError("right-hand side length does not match rows");
  const SnfResult f = snf(A);
  const std::vector<Integer> ub = f.U.apply(b);
  const std::vector<Integer> d = f.diagonal();
  std::vector<Integer> y(A.cols(), Integer(0));
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const Integer di = i < d.size() ? d[i] : Integer(0);
    if (di == 0) {
      if (ub[i] != 0) return std::nullopt;
      continue;
    }
    if (!mpz_divisible_p(ub[i].get_mpz_t(), di.get_mpz_t())) return std::nullopt;
    y[i] = exact_div(ub[i], di);
  }
  DiophantineSolution sol;
  sol.particular = f.V.apply(y);
  for (std::size_t j = f.rank(); j < A.cols(); ++j) sol.kernel_basis.push_back(f.V.col(j));
  return sol;
}

namespace {

/// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& M, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t j = 0; j < cols && r < M.size(); ++j) {
    std::size_t p = r;
    while (p < M.size() && M[p][j] == 0) ++p;
    if (p == M.size()) continue;
    std::swap(M[r], M[p]);
    const Rational inv = 1 / M[r][j];
    for (auto& x : M[r]) x *= inv;
    for (std::size_t i = 0; i < M.size(); ++i) {
      if (i == r || M[i][j] == 0) continue;
      const Rational f = M[i][j];
      for (std::size_t k = 0; k < cols; ++k) M[i][k] -= f * M[r][k];
    }
    pivots.push_back(j);
    ++r;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<Rational>> nullspace_rational(const IntMatrix& A) {
  std::vector<std::vector<Rational>> M(A.rows(), std::vector<Rational>(A.cols()));
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) M[i][j] = A(i, j);
  const auto pivots = rref(M, A.cols());
  std::vector<bool> is_pivot(A.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < A.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(A.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -M[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank_rational(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) return 0;
  auto M = rows;
  return rref(M, rows.front().size()).size();
}

}  // namespace tropreal
