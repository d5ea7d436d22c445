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
MulValue q(long n, long d = 1) { return MulValue::from_rational(Rational(n, d)); }
EqualityMode exact_mode(const TropicalCurve& c) { return mode_for(c.lattice(), ModeKind::exact); }
const std::array<Vec2i, 3> kStd{Vec2i{1, 0}, Vec2i{0, 1}, Vec2i{-1, -1}};
}  // namespace

TEST(FlagCharacter, StandardAndDoubled) {
  auto f1 = flag_character({kStd.begin(), kStd.end()}, 0);
  EXPECT_EQ(f1.normal, (Vec2i{0, 1}));
  EXPECT_EQ(*f1.pullback_exponent, 1);
  auto f3 = flag_character({kStd.begin(), kStd.end()}, 2);
  EXPECT_EQ(f3.normal, (Vec2i{1, -1}));
  EXPECT_EQ(*f3.pullback_exponent, 1);
  auto d1 = flag_character({{2, 0}, {0, 2}, {-2, -2}}, 0);
  EXPECT_EQ(d1.normal, (Vec2i{0, 1}));
  EXPECT_EQ(*d1.pullback_exponent, 2);
}

TEST(VertexRelation, Examples) {
  const auto r = vertex_relation(theta(), "u");
  EXPECT_EQ(r.rhs, MulValue::minus_one());
  for (const auto& [f, e] : r.exponents) EXPECT_EQ(e, 1);

  const auto t = oracle::theta_from({2, 0}, {4, 12}, {-6, -12});
  ASSERT_TRUE(validate(t).empty());
  const auto w = vertex_relation(t, "u");
  EXPECT_EQ(w.exponents.at({"u", "e1"}), 1);
  EXPECT_EQ(w.exponents.at({"u", "e2"}), 2);
  EXPECT_EQ(w.exponents.at({"u", "e3"}), 3);
  EXPECT_TRUE(w.rhs.is_identity());

  const auto s = subdivide(theta(), {{"e1", Rational(1, 2)}});
  const auto two = vertex_relation(s.curve, s.new_vertex_ids[0]);
  EXPECT_EQ(two.exponents.size(), 2u);
  EXPECT_TRUE(two.rhs.is_identity());
}

TEST(EdgeRelation, Theta) {
  const auto e1 = edge_relation(theta(), "e1");
  EXPECT_TRUE(e1.rhs.is_identity());
  EXPECT_EQ(e1.exponents.size(), 2u);
  EXPECT_EQ(edge_relation(theta(), "e2").rhs, a(Alpha::a11));
  const auto e3 = edge_relation(theta(), "e3").rhs;
  EXPECT_EQ(e3, a(Alpha::a11, -1) * a(Alpha::a12) * a(Alpha::a21, -1) * a(Alpha::a22));
}

TEST(Assemble, Sizes) {
  const auto m = assemble_system(theta());
  EXPECT_EQ(m.exponent_matrix.rows(), 5u);
  EXPECT_EQ(m.unknowns.size(), 6u);
  EXPECT_EQ(m.row_labels.front(), "vertex u");
  EXPECT_EQ(m.row_labels.back(), "edge e3");
  const auto s = assemble_system(subdivide(theta(), {{"e2", Rational(1, 3)}}).curve);
  EXPECT_EQ(s.exponent_matrix.rows(), 7u);
  EXPECT_EQ(s.unknowns.size(), 8u);
  const auto c = selftest::cycle(4);
  const auto cs = assemble_system(c);
  for (std::size_t i = 0; i < 4; ++i) {
    int nonzero = 0;
    for (std::size_t j = 0; j < cs.unknowns.size(); ++j) nonzero += cs.exponent_matrix(i, j) != 0;
    EXPECT_EQ(nonzero, 2);
  }
}

TEST(Solve, ThetaUnit) {
  const auto t = theta(selftest::unit_multipliers());
  const auto mode = exact_mode(t);
  const auto sys = assemble_system(t);
  const auto res = solve_monomial(sys, mode);
  ASSERT_EQ(res.feasible, Decision::yes);
  EXPECT_TRUE(verify_assignment(t, to_assignment(sys, res), mode).pass);

  FlagAssignment hand;
  for (const auto& f : t.flags()) hand.values[f] = f.edge == "e1" ? MulValue::minus_one() : MulValue();
  EXPECT_TRUE(verify_assignment(t, hand, mode).pass);
}

TEST(Solve, ThetaFormalWitness) {
  const auto sys = assemble_system(theta());
  const auto res = solve_monomial(sys, EqualityMode::formal());
  ASSERT_EQ(res.feasible, Decision::no);
  ASSERT_FALSE(res.witnesses.empty());
  const MulValue s = sigma_cocycle(theta());
  const MulValue w = res.witnesses.front().value;
  EXPECT_TRUE(w == s || w == s.inverse());
  EXPECT_FALSE(prelog_exists(theta(), EqualityMode::formal()));
  EXPECT_TRUE(prelog_exists(theta(selftest::unit_multipliers()), exact_mode(theta(selftest::unit_multipliers()))));
}

TEST(Solve, ToySystem) {
  const auto res = solve_system(IntMatrix{{2}, {3}}, {MulValue(), MulValue()}, EqualityMode::formal());
  ASSERT_EQ(res.feasible, Decision::yes);
  EXPECT_TRUE(res.solution[0].is_identity());
  EXPECT_TRUE(res.kernel.empty());

  const auto tor = solve_system(IntMatrix{{2}}, {MulValue()}, EqualityMode::formal());
  ASSERT_EQ(tor.kernel.size(), 1u);
  EXPECT_EQ(tor.kernel[0].order, 2);

  const auto bad = solve_system(IntMatrix{{2}, {2}}, {a(Alpha::a11), MulValue()}, EqualityMode::formal());
  EXPECT_EQ(bad.feasible, Decision::no);
}

TEST(Verify, PerturbationIsLocal) {
  const auto t = theta(selftest::unit_multipliers());
  const auto mode = exact_mode(t);
  FlagAssignment hand;
  for (const auto& f : t.flags()) hand.values[f] = f.edge == "e1" ? MulValue::minus_one() : MulValue();
  hand.values[{"u", "e1"}] *= MulValue::minus_one();
  const auto rep = verify_assignment(t, hand, mode);
  EXPECT_FALSE(rep.pass);
  std::vector<std::string> failed;
  for (const auto& r : rep.rows)
    if (r.test.verdict != Decision::yes) failed.push_back(r.label);
  EXPECT_EQ(failed, (std::vector<std::string>{"vertex u", "edge e1"}));
}

TEST(RootCongruence, Examples) {
  EXPECT_EQ(solve_root_congruence(2, 4, 6, 2, 1, 0), (std::pair<Integer, Integer>{0, 0}));
  EXPECT_EQ(solve_root_congruence(2, 4, 6, 2, 1, 1), (std::pair<Integer, Integer>{2, 0}));
  EXPECT_EQ(solve_root_congruence(1, 1, 1, 1, -1, 5), (std::pair<Integer, Integer>{0, 0}));
}

TEST(VertexModel, StandardTriple) {
  const auto vm = betas_from_mus(kStd, q(2), q(3), q(-1, 6));
  EXPECT_EQ(vm.beta2, q(1, 2));
  EXPECT_EQ(vm.beta1, q(3));
  EXPECT_TRUE(vm.zeta1.is_identity());
  EXPECT_TRUE(vm.zeta2.is_identity());
  const auto mu = boundary_values(kStd, vm.beta1, vm.beta2);
  EXPECT_EQ(mu[0], q(2));
  EXPECT_EQ(mu[1], q(3));
  EXPECT_EQ(mu[2], q(-1, 6));

  const auto one = betas_from_mus(kStd, q(1), q(1), q(-1));
  EXPECT_TRUE(one.beta1.is_identity());
  EXPECT_TRUE(one.beta2.is_identity());
  EXPECT_THROW(betas_from_mus(kStd, q(1), q(1), q(1)), DomainError);
}

TEST(VertexModel, WeightedTripleWithRootOfUnity) {
  const std::array<Vec2i, 3> m{Vec2i{2, 0}, Vec2i{4, 12}, Vec2i{-6, -12}};
  // nu1 * nu2^2 * nu3^3 = 1 for these weights.
  const MulValue nu1 = q(5) * MulValue::phase(Rational(1, 3));
  const MulValue nu2 = q(2) * MulValue::phase(Rational(1, 5));
  const MulValue nu3 = mv_root((nu1 * nu2 * nu2).inverse(), 3) * MulValue::phase(Rational(1, 3));
  const auto vm = betas_from_mus(m, nu1, nu2, nu3);
  const auto mu = boundary_values(m, vm.beta1, vm.beta2);
  EXPECT_EQ(mu[0], nu1);
  EXPECT_EQ(mu[1], nu2);
  EXPECT_EQ(mu[2], nu3);
  const Integer D = abs(det2(m[0], m[1]));
  const Integer w3 = multiplicity(m[2]);
  EXPECT_EQ(mv_pow(vm.zeta1 / vm.zeta2, Rational(D, w3)) * vm.zeta3, MulValue());
}

TEST(VertexModel, NumericRoundTrip) {
  const std::complex<double> n1{0.3, 1.7}, n2{-2.0, 0.5};
  const std::complex<double> n3 = -1.0 / (n1 * n2);
  const auto vm = betas_from_mus_numeric(kStd, n1, n2, n3);
  const auto mu = boundary_values_numeric(kStd, vm.beta1, vm.beta2);
  EXPECT_LT(std::abs(mu[0] - n1), 1e-9);
  EXPECT_LT(std::abs(mu[1] - n2), 1e-9);
  EXPECT_LT(std::abs(mu[2] - n3), 1e-9);
}
