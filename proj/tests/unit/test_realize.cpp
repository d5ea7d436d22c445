#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tropreal/errors.hpp"
#include "tropreal/prelog.hpp"
#include "tropreal/realize.hpp"
#include "tropreal/selftest.hpp"

using namespace tropreal;
using selftest::theta;

namespace {
MulValue a(Alpha s, Rational e = 1) { return MulValue::alpha(s, e); }

EqualityMode exact_mode(const TropicalCurve& c) { return mode_for(c.lattice(), ModeKind::exact); }
}  // namespace

TEST(Characters, Definitions) {
  EXPECT_EQ(chi1({2, 3}), a(Alpha::a12, 2) * a(Alpha::a11, -3));
  EXPECT_EQ(chi2({-1, 1}), a(Alpha::a22, -1) * a(Alpha::a21, -1));
}

TEST(Sigma, ThetaValue) {
  const MulValue expected = a(Alpha::a12) * a(Alpha::a22) * a(Alpha::a21, -1);
  EXPECT_EQ(sigma_cocycle(theta()), expected);
  EXPECT_EQ(sigma_geometric_auto(theta()).sigma, expected);
}

TEST(Sigma, UnitMultipliersGiveOne) {
  const auto t = theta(selftest::unit_multipliers());
  EXPECT_EQ(mv_is_one(sigma_cocycle(t), exact_mode(t)).verdict, Decision::yes);
}

TEST(Sigma, RelifAndOffsetInvariance) {
  const auto t = theta();
  const auto s = sigma_cocycle(t);
  EXPECT_EQ(sigma_cocycle(relift(t, {{"u", Vec2i{3, -2}}, {"v", Vec2i{-1, 5}}})), s);
  const Vec2q o1 = t.lattice().point({Rational(-1, 101), Rational(-1, 10201)});
  const Vec2q o2 = t.lattice().point({Rational(37, 103), Rational(211, 10609)});
  EXPECT_EQ(sigma_geometric(t, o1), s);
  EXPECT_EQ(sigma_geometric(t, o2), s);
}

TEST(Sigma, CycleCurveSingleCrossing) {
  const auto c = selftest::cycle(4);
  EXPECT_EQ(sigma_cocycle(c), a(Alpha::a12));
  EXPECT_EQ(sigma_geometric_auto(c).sigma, a(Alpha::a12));
}

TEST(Sigma, DegenerateRetriesExhausted) {
  EXPECT_NO_THROW(sigma_geometric_auto(theta(), 16));
  EXPECT_THROW(sigma_geometric_auto(theta(), 0), DegenerateOffsetError);
}

TEST(Parity, Examples) {
  EXPECT_EQ(parity(theta()), 0);
  EXPECT_EQ(parity(selftest::theta2()), 0);
  EXPECT_EQ(parity(oracle::theta_from({2, 1}, {1, 2}, {-3, -3})), 0);
  EXPECT_EQ(parity(selftest::cycle(3)), 0);
  EXPECT_EQ(sign_target(1), MulValue::minus_one());
  EXPECT_TRUE(sign_target(0).is_identity());
}

TEST(Realizability, Theta) {
  const auto unit = theta(selftest::unit_multipliers());
  const auto r = realizability(unit, exact_mode(unit));
  EXPECT_EQ(r.verdict, Decision::yes);
  EXPECT_EQ(r.parity, 0);

  const auto f = realizability(theta(), EqualityMode::formal());
  EXPECT_EQ(f.verdict, Decision::no);
  EXPECT_NE(f.certificate.find("a12"), std::string::npos);
}

TEST(Realizability, TunedExactAgreesWithPrelog) {
  // a21 = a12 * a22 makes sigma trivial.
  const auto m = selftest::exact_multipliers(
      {{Alpha::a11, {5, Rational(1, 7)}}, {Alpha::a12, {Rational(2, 3), Rational(1, 4)}},
       {Alpha::a22, {6, Rational(1, 3)}}, {Alpha::a21, {4, Rational(7, 12)}}});
  const auto t = theta(m);
  const auto mode = exact_mode(t);
  EXPECT_EQ(realizability(t, mode).verdict, Decision::yes);
  EXPECT_TRUE(prelog_exists(t, mode));

  auto off = selftest::exact_multipliers(
      {{Alpha::a11, {5, 0}}, {Alpha::a12, {2, 0}}, {Alpha::a22, {6, 0}}, {Alpha::a21, {4, 0}}});
  const auto u = theta(off);
  EXPECT_EQ(realizability(u, exact_mode(u)).verdict, Decision::no);
  EXPECT_FALSE(prelog_exists(u, exact_mode(u)));
}

TEST(Realizability, NumericMargin) {
  std::map<Alpha, std::complex<double>> v{{Alpha::a11, 1.0}, {Alpha::a12, 1.0}, {Alpha::a21, 1.0}, {Alpha::a22, 1.0 + 1e-8}};
  const auto r = realizability(theta(), EqualityMode::numeric(v, 1e-9));
  EXPECT_EQ(r.verdict, Decision::undecided);
  EXPECT_GT(r.margin, 1e-9);
}
