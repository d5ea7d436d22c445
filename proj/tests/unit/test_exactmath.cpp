#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tropreal/errors.hpp"
#include "tropreal/exactmath.hpp"

using namespace tropreal;

TEST(Rational, ParseAndCanonicalForm) {
  EXPECT_EQ(parse_rational("2/4"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(to_string(parse_rational("6/-4")), "-3/2");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("x"), ParseError);
}

TEST(Rational, FloorAndFrac) {
  EXPECT_EQ(floor(Rational(-1, 3)), Integer(-1));
  EXPECT_EQ(frac(Rational(-1, 3)), Rational(2, 3));
  EXPECT_EQ(mod_floor(Integer(-7), Integer(3)), Integer(2));
  EXPECT_THROW(exact_div(Integer(7), Integer(2)), DomainError);
}

TEST(ExtGcd, Conventions) {
  auto z = ext_gcd(0, 0);
  EXPECT_EQ(z.g, 0);
  EXPECT_EQ(z.x, 0);
  EXPECT_EQ(z.y, 0);
  auto r = ext_gcd(6, 4);
  EXPECT_EQ(r.g, 2);
  EXPECT_EQ(r.x, 1);
  EXPECT_EQ(r.y, -1);
}

TEST(ExtGcd, RandomPairsSatisfyBezout) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-1000, 1000);
  for (int i = 0; i < 500; ++i) {
    Integer a = d(rng), b = d(rng);
    auto r = ext_gcd(a, b);
    EXPECT_EQ(a * r.x + b * r.y, r.g);
    EXPECT_EQ(r.g, gcd(a, b));
  }
}

TEST(Hnf, SmallCases) {
  auto id = hnf(IntMatrix::identity(3));
  EXPECT_EQ(id.H, IntMatrix::identity(3));
  EXPECT_EQ(id.U, IntMatrix::identity(3));

  IntMatrix A{{2, 4}, {6, 8}};
  auto h = hnf(A);
  EXPECT_EQ(h.U * A, h.H);
  EXPECT_EQ(h.H(0, 0), 2);
  EXPECT_EQ(h.H(1, 0), 0);
  EXPECT_EQ(abs(determinant(h.U)), 1);

  IntMatrix Z(2, 3);
  auto hz = hnf(Z);
  EXPECT_TRUE(hz.H.is_zero());
  EXPECT_EQ(hz.U, IntMatrix::identity(2));
}

TEST(Snf, SmallCases) {
  EXPECT_EQ(snf(IntMatrix::identity(3)).S, IntMatrix::identity(3));
  auto s = snf(IntMatrix{{2, 4}, {6, 8}});
  EXPECT_EQ(s.diagonal(), (std::vector<Integer>{2, 4}));
  auto t = snf(IntMatrix{{1, 0}, {0, 0}});
  EXPECT_EQ(t.diagonal(), (std::vector<Integer>{1, 0}));
  EXPECT_EQ(t.rank(), 1u);
}

TEST(Snf, DeterminantalDivisorsMatchMinorGcds) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int it = 0; it < 40; ++it) {
    const std::size_t r = dim(rng), c = dim(rng);
    IntMatrix A = oracle::random_matrix(rng, r, c, 9);
    auto s = snf(A);
    EXPECT_EQ(s.U * A * s.V, s.S);
    auto d = s.diagonal();
    Integer prefix = 1;
    for (std::size_t k = 1; k <= d.size(); ++k) {
      prefix *= d[k - 1];
      EXPECT_EQ(prefix, oracle::determinantal_divisor(A, k)) << A;
    }
  }
}

TEST(Rank, AgreesWithSnfAndExamples) {
  EXPECT_EQ(rank_rational(IntMatrix::identity(2)), 2u);
  EXPECT_EQ(rank_rational(IntMatrix{{1, 2}, {2, 4}}), 1u);
  std::mt19937_64 rng(5);
  for (int it = 0; it < 30; ++it) {
    IntMatrix B = oracle::random_matrix(rng, 4, 2, 5);
    IntMatrix C = oracle::random_matrix(rng, 2, 5, 5);
    IntMatrix A = B * C;
    EXPECT_EQ(rank_rational(A), snf(A).rank());
    EXPECT_LE(rank_rational(A), 2u);
  }
}

TEST(Determinant, MatchesRationalElimination) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 30; ++it) {
    IntMatrix A = oracle::random_matrix(rng, 5, 5, 20);
    std::vector<std::vector<Integer>> rows;
    for (std::size_t i = 0; i < 5; ++i) rows.push_back(A.row(i));
    EXPECT_EQ(determinant(A), oracle::det(rows));
  }
}

TEST(Diophantine, Examples) {
  std::vector<Integer> b{4, -7};
  auto s = linear_diophantine_solve(IntMatrix::identity(2), b);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, b);
  EXPECT_TRUE(s->kernel_basis.empty());

  std::vector<Integer> three{3};
  EXPECT_FALSE(linear_diophantine_solve(IntMatrix{{2}}, three));
}

TEST(Diophantine, ConstructedInstancesAreSolved) {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 40; ++it) {
    IntMatrix A = oracle::random_matrix(rng, 3, 5, 6);
    std::vector<Integer> x0 = oracle::random_matrix(rng, 5, 1, 4).col(0);
    auto b = A.apply(x0);
    auto s = linear_diophantine_solve(A, b);
    ASSERT_TRUE(s);
    EXPECT_EQ(A.apply(s->particular), b);
    EXPECT_EQ(s->kernel_basis.size(), 5 - rank_rational(A));
    for (const auto& k : s->kernel_basis) {
      for (const auto& v : A.apply(k)) EXPECT_EQ(v, 0);
    }
  }
}

TEST(Nullspace, Dimension) {
  IntMatrix A{{1, 2, 3}, {2, 4, 6}};
  auto n = nullspace_rational(A);
  EXPECT_EQ(n.size(), 2u);
  for (const auto& v : n) EXPECT_EQ(v[0] + 2 * v[1] + 3 * v[2], 0);
}
