#include <gtest/gtest.h>

#include <cmath>

#include "tropreal/errors.hpp"
#include "tropreal/valuegroup.hpp"

using namespace tropreal;

namespace {
MulValue a(Alpha s, Rational e = 1) { return MulValue::alpha(s, e); }
}  // namespace

TEST(MulValue, GroupLaws) {
  const MulValue x = a(Alpha::a11, 2) * MulValue::scalar(3) * MulValue::phase(Rational(1, 3));
  EXPECT_EQ(MulValue() * x, x);
  EXPECT_TRUE((a(Alpha::a11) * a(Alpha::a11, -1)).is_identity());
  EXPECT_TRUE((x * x.inverse()).is_identity());
  const MulValue h = MulValue::scalar(2, Rational(1, 2)) * MulValue::phase(Rational(1, 4));
  EXPECT_EQ(h * h, MulValue::scalar(2) * MulValue::phase(Rational(1, 2)));
}

TEST(MulValue, FromRationalFactorsPrimes) {
  const MulValue v = MulValue::from_rational(Rational(-12, 5));
  EXPECT_EQ(v.phase_turns(), Rational(1, 2));
  EXPECT_EQ(v.scalar_exponents().at(2), 2);
  EXPECT_EQ(v.scalar_exponents().at(3), 1);
  EXPECT_EQ(v.scalar_exponents().at(5), -1);
}

TEST(MulValue, PowersAndRoots) {
  const MulValue x = a(Alpha::a12, 3) * MulValue::phase(Rational(1, 10));
  EXPECT_TRUE(mv_pow(x, 0).is_identity());
  EXPECT_EQ(mv_pow(MulValue::minus_one(), Rational(1, 2)), MulValue::phase(Rational(1, 4)));
  EXPECT_EQ(mv_pow(mv_pow(x, 3), Rational(1, 3)), x);
  EXPECT_TRUE(mv_root(MulValue(), 5).is_identity());
  EXPECT_EQ(mv_root(MulValue::minus_one(), 2), MulValue::phase(Rational(1, 4)));
  EXPECT_EQ(mv_root(a(Alpha::a11, 2), 2), a(Alpha::a11));
  for (int k = 1; k <= 6; ++k) {
    const MulValue r = mv_root(x, k);
    EXPECT_EQ(mv_pow(r, k), x);
    EXPECT_LT(r.phase_turns(), Rational(1, k));
  }
}

TEST(MulValue, Rendering) {
  EXPECT_EQ(to_string(MulValue()), "1");
  EXPECT_EQ(to_string(a(Alpha::a12) * a(Alpha::a21, -1)), "a12 * a21^-1");
}

TEST(Factorize, Products) {
  auto f = factorize(Integer(360));
  EXPECT_EQ(f.at(2), 3u);
  EXPECT_EQ(f.at(3), 2u);
  EXPECT_EQ(f.at(5), 1u);
  Integer big = Integer("1000000007") * Integer("998244353");
  auto g = factorize(big);
  EXPECT_EQ(g.size(), 2u);
}

TEST(EqualityModes, IsOne) {
  EXPECT_EQ(mv_is_one(MulValue(), EqualityMode::formal()).verdict, Decision::yes);
  EXPECT_EQ(mv_is_one(a(Alpha::a11), EqualityMode::formal()).verdict, Decision::no);

  const MulValue s = a(Alpha::a21) * a(Alpha::a12, -1) * a(Alpha::a22, -1);
  auto exact = EqualityMode::exact({{Alpha::a11, {3, 0}}, {Alpha::a12, {1, 0}}, {Alpha::a21, {2, 0}}, {Alpha::a22, {2, 0}}});
  EXPECT_EQ(mv_is_one(s, exact).verdict, Decision::yes);

  auto numeric = EqualityMode::numeric({}, 1e-9);
  const OneTest t = mv_is_one(MulValue::phase(Rational(1, 3)), numeric);
  EXPECT_EQ(t.verdict, Decision::no);
  EXPECT_NEAR(t.margin, std::abs(std::polar(1.0, 2 * M_PI / 3) - 1.0), 1e-12);
}

TEST(EqualityModes, NumericUndecidedBand) {
  auto numeric = EqualityMode::numeric({{Alpha::a11, {1.0 + 1e-8, 0.0}}}, 1e-9);
  EXPECT_EQ(mv_is_one(a(Alpha::a11), numeric).verdict, Decision::undecided);
}

TEST(EqualityModes, MissingExactValueIsConfigError) {
  auto exact = EqualityMode::exact({{Alpha::a11, {1, 0}}});
  EXPECT_THROW(mv_is_one(a(Alpha::a22), exact), ConfigError);
}

TEST(EvalNumeric, Examples) {
  EXPECT_EQ(mv_eval_numeric(MulValue(), {}), std::complex<double>(1, 0));
  EXPECT_EQ(mv_eval_numeric(a(Alpha::a11), {{Alpha::a11, {2, 0}}}), std::complex<double>(2, 0));
  auto m = mv_eval_numeric(MulValue::minus_one(), {});
  EXPECT_NEAR(m.real(), -1, 1e-12);
  EXPECT_NEAR(m.imag(), 0, 1e-12);
  EXPECT_ANY_THROW(mv_eval_numeric(a(Alpha::a11), {}));
}
