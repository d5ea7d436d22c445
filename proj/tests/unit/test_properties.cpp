#include <gtest/gtest.h>

#include "tropreal/errors.hpp"
#include "tropreal/moduli.hpp"
#include "tropreal/prelog.hpp"
#include "tropreal/realize.hpp"
#include "tropreal/selftest.hpp"

using namespace tropreal;
using namespace tropreal::selftest;

namespace {
constexpr std::uint64_t kSeed = 4242;
constexpr std::size_t kCases = 25;
}  // namespace

TEST(Property, SubdivisionAndRelifPreserveInvariants) {
  Rng rng(kSeed);
  for (const auto& nc : generated_curves(kSeed, kCases)) {
    const auto& c = nc.curve;
    const auto s = random_subdivision(rng, c, 2);
    const auto r = random_relift(rng, s);
    ASSERT_TRUE(validate(r).empty()) << nc.name;
    EXPECT_EQ(genus(r), genus(c));
    EXPECT_EQ(curve_delta(r), curve_delta(c));
    EXPECT_EQ(parity(r), parity(c));
    EXPECT_EQ(sigma_cocycle(r), sigma_cocycle(c)) << nc.name;
  }
}

TEST(Property, SigmaFormulasAgree) {
  for (const auto& nc : generated_curves(kSeed + 1, kCases)) {
    const auto g = sigma_geometric_auto(nc.curve, 32);
    EXPECT_EQ(g.sigma, sigma_cocycle(nc.curve)) << nc.name;
  }
}

TEST(Property, TransformOrientation) {
  Rng rng(kSeed + 2);
  for (const auto& nc : generated_curves(kSeed + 2, kCases)) {
    const auto s = sigma_cocycle(nc.curve);
    const auto plus = transform(nc.curve, random_unimodular(rng, 1));
    const auto minus = transform(nc.curve, random_unimodular(rng, -1));
    const auto mp = mode_for(plus.lattice(), ModeKind::formal);
    EXPECT_EQ(mv_substitute(sigma_cocycle(plus), mp), mv_substitute(s, mode_for(nc.curve.lattice(), ModeKind::formal)));
    EXPECT_EQ(mv_substitute(sigma_cocycle(minus), mode_for(minus.lattice(), ModeKind::formal)),
              mv_substitute(s, mode_for(nc.curve.lattice(), ModeKind::formal)).inverse());
  }
}

TEST(Property, VerdictMatchesFeasibility) {
  Rng rng(kSeed + 3);
  for (const auto& nc : generated_curves(kSeed + 3, kCases)) {
    for (bool want : {true, false}) {
      const auto c = with_multipliers(nc.curve, tuned_exact(rng, nc.curve, want));
      const auto mode = mode_for(c.lattice(), ModeKind::exact);
      const bool yes = realizability(c, mode).verdict == Decision::yes;
      EXPECT_EQ(yes, prelog_exists(c, mode)) << nc.name;
    }
  }
}

TEST(Property, SolverOutputVerifies) {
  Rng rng(kSeed + 4);
  for (const auto& nc : generated_curves(kSeed + 4, kCases)) {
    const auto c = with_multipliers(nc.curve, tuned_exact(rng, nc.curve, true));
    const auto mode = mode_for(c.lattice(), ModeKind::exact);
    const auto sys = assemble_system(c);
    const auto res = solve_monomial(sys, mode);
    ASSERT_EQ(res.feasible, Decision::yes) << nc.name;
    EXPECT_TRUE(verify_assignment(c, to_assignment(sys, res), mode).pass) << nc.name;
  }
}

TEST(Property, DualSpaceIsOneDimensional) {
  for (const auto& nc : generated_curves(kSeed + 5, kCases)) {
    if (!nc.trivalent) continue;
    EXPECT_EQ(dual_flag_space(nc.curve).dimension, 1u) << nc.name;
  }
}
