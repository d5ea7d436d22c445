#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tropreal/errors.hpp"
#include "tropreal/moduli.hpp"
#include "tropreal/selftest.hpp"

using namespace tropreal;
using selftest::theta;
using selftest::theta2;
using selftest::theta_marks;

namespace {
EqualityMode exact_mode(const TropicalCurve& c) { return mode_for(c.lattice(), ModeKind::exact); }
}  // namespace

TEST(BuildF, Theta) {
  const IntMatrix F = build_F(theta());
  EXPECT_EQ(F, (IntMatrix{{0, -1, 0, 1}, {1, 0, -1, 0}, {-1, 1, 1, -1}}));
}

TEST(BuildF, ReversedEdgeKeepsRow) {
  const auto t = theta();
  auto es = t.edges();
  std::swap(es[0].tail, es[0].head);
  es[0].weight_vector = -es[0].weight_vector;
  es[0].shift = -es[0].shift;
  const TropicalCurve r(t.lattice(), t.vertices(), es);
  ASSERT_TRUE(validate(r).empty());
  const IntMatrix F = build_F(t), G = build_F(r);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(G(0, j), F(0, j));
  EXPECT_EQ(deformation_ranks(r).rank_kernel, deformation_ranks(t).rank_kernel);
}

TEST(Ranks, ThetaAndCycle) {
  const auto r = deformation_ranks(theta());
  EXPECT_EQ(r.rank_kernel, 2u);
  EXPECT_EQ(r.rank_cokernel, 1u);
  const auto c = deformation_ranks(selftest::cycle(4));
  EXPECT_EQ(c.rank_kernel, 5u);
  EXPECT_EQ(c.rank_cokernel, 1u);
}

TEST(Ranks, RankIdentityOnGeneratedTrivalentCurves) {
  for (const auto& nc : selftest::generated_curves(99, 20)) {
    if (!nc.trivalent) continue;
    const auto r = deformation_ranks(nc.curve);
    const std::size_t V = nc.curve.vertices().size(), E = nc.curve.edges().size();
    EXPECT_EQ(r.rank_kernel, static_cast<std::size_t>(genus(nc.curve).get_si()));
    EXPECT_EQ(r.rank_cokernel, 1u);
    EXPECT_EQ(2 * V - r.rank_kernel, E - r.rank_cokernel);
  }
}

TEST(DualSpace, ThetaRotationGenerator) {
  const auto t = theta();
  const auto d = dual_flag_space(t);
  ASSERT_EQ(d.dimension, 1u);
  for (const auto& f : t.flags()) {
    const Vec2i w = t.outgoing(t.vertex_index(f.vertex), t.edge_index(f.edge));
    const Vec2q u = d.generator.at(f);
    EXPECT_EQ(u.x, Rational(-w.y));
    EXPECT_EQ(u.y, Rational(w.x));
  }
}

TEST(Rigidity, Theta) {
  EXPECT_TRUE(rigidity_check(theta(), theta_marks()));
  EXPECT_FALSE(rigidity_check(theta(), {theta_marks()[0]}));
  EXPECT_FALSE(kernel_order_GCstar(theta(), {theta_marks()[0]}).order.has_value());
}

TEST(SlideCovector, PairsToOne) {
  for (Vec2i d : {Vec2i{1, 0}, Vec2i{3, -7}, Vec2i{-5, 2}, Vec2i{0, -1}}) {
    const Vec2i c = slide_covector(d);
    EXPECT_EQ(c.x * d.x + c.y * d.y, 1);
  }
}

TEST(KernelOrder, ToyAndTheta) {
  EXPECT_EQ(*kernel_order_of(IntMatrix{{2, 0}, {0, 3}}).order, 6);
  EXPECT_EQ(kernel_order_bruteforce(IntMatrix{{2, 0}, {0, 3}}), 6);
  EXPECT_EQ(*kernel_order_GCstar(theta(), theta_marks()).order, 1);
  EXPECT_EQ(kernel_order_bruteforce(theta(), theta_marks()), 1);
  EXPECT_EQ(*kernel_order_GCstar(theta2(), theta_marks()).order, 1);
  EXPECT_EQ(kernel_order_bruteforce(theta2(), theta_marks()), 1);
  EXPECT_THROW(kernel_order_bruteforce(IntMatrix{{1, 1}, {2, 2}}), DomainError);
}

TEST(KernelOrder, RandomMatricesAgainstModularCount) {
  std::mt19937_64 rng(21);
  int checked = 0;
  for (int it = 0; it < 200 && checked < 40; ++it) {
    const std::size_t n = 1 + it % 3;
    const IntMatrix D = oracle::random_matrix(rng, n + it % 2, n, 4);
    const Integer dn = oracle::determinantal_divisor(D, n);
    if (dn == 0 || dn > 40) continue;
    const auto k = kernel_order_of(D);
    ASSERT_TRUE(k.order);
    EXPECT_EQ(*k.order, dn);
    EXPECT_EQ(Integer(static_cast<unsigned long>(oracle::count_mod(D, dn.get_si()))), dn) << D;
    ++checked;
  }
  EXPECT_GE(checked, 30);
}

TEST(Count, ThetaGolden) {
  const auto t = theta(selftest::unit_multipliers());
  const auto r = count_curves(t, theta_marks(), exact_mode(t));
  ASSERT_TRUE(r.total);
  EXPECT_EQ(*r.total, 1);
  EXPECT_EQ(r.edge_weight_product, 1);
}

TEST(Count, Theta2Golden) {
  const auto t = theta2(selftest::unit_multipliers());
  const auto r = count_curves(t, theta_marks(), exact_mode(t));
  ASSERT_TRUE(r.total);
  EXPECT_EQ(*r.kernel_order, kernel_order_bruteforce(t, theta_marks()));
  EXPECT_EQ(r.edge_weight_product, 8);
  EXPECT_EQ(*r.total, 8);
}

TEST(Count, Errors) {
  const auto t = theta(selftest::unit_multipliers());
  EXPECT_THROW(count_curves(t, {theta_marks()[0]}, exact_mode(t)), ConstraintError);
  EXPECT_THROW(count_curves(theta(), theta_marks(), EqualityMode::formal()), NotRealizable);
  EXPECT_THROW(count_curves(t, {{"e1", Rational(1, 3)}, {"e1", Rational(2, 3)}}, exact_mode(t)), ConstraintError);
}

TEST(Count, SubdivisionOfUnmarkedEdgeKeepsTotal) {
  const auto t = theta2(selftest::unit_multipliers());
  const auto base = count_curves(t, theta_marks(), exact_mode(t));
  const auto s = subdivide(t, {{"e3", Rational(1, 4)}, {"e3", Rational(3, 4)}}).curve;
  const auto r = count_curves(s, theta_marks(), exact_mode(s));
  EXPECT_EQ(r.total, base.total);
  EXPECT_EQ(chain_weight_product(s), 8);
}
