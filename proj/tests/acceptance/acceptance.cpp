// One line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tropreal/moduli.hpp"
#include "tropreal/selftest.hpp"

using namespace tropreal;
namespace st = tropreal::selftest;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::function<st::SuiteResult(const st::Options&)> run;
};

EqualityMode exact_mode(const TropicalCurve& c) { return mode_for(c.lattice(), ModeKind::exact); }

// Golden kernel orders and totals, each pinned against the exhaustive count.
st::SuiteResult goldens() {
  st::SuiteResult r;
  r.name = "golden values";
  auto check = [&](bool ok, const std::string& what) {
    ++r.checks;
    if (!ok && r.passed) {
      r.passed = false;
      r.detail = what;
    }
  };
  const auto t1 = st::theta(st::unit_multipliers());
  const auto t2 = st::theta2(st::unit_multipliers());
  const auto marks = st::theta_marks();
  const Integer b1 = kernel_order_bruteforce(t1, marks);
  const Integer b2 = kernel_order_bruteforce(t2, marks);
  const auto c1 = count_curves(t1, marks, exact_mode(t1));
  const auto c2 = count_curves(t2, marks, exact_mode(t2));
  check(b1 == 1 && c1.kernel_order == b1, "theta kernel order");
  check(b2 == 1 && c2.kernel_order == b2, "theta2 kernel order");
  check(c1.total && *c1.total == b1 * 1, "theta total");
  check(c2.total && *c2.total == b2 * 8, "theta2 total");
  if (r.passed) {
    r.detail = "kernel orders theta " + to_string(b1) + ", theta2 " + to_string(b2) + "; totals theta " +
               to_string(*c1.total) + ", theta2 " + to_string(*c2.total);
  }
  return r;
}

// Determinantal divisors from explicit minors against the Smith diagonal.
st::SuiteResult minor_oracle() {
  st::SuiteResult r;
  r.name = "minor oracle";
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int it = 0; it < 100; ++it) {
    const IntMatrix A = oracle::random_matrix(rng, dim(rng), dim(rng), 20);
    const auto d = snf(A).diagonal();
    Integer prefix = 1;
    for (std::size_t k = 1; k <= d.size(); ++k) {
      prefix *= d[k - 1];
      ++r.checks;
      if (prefix != oracle::determinantal_divisor(A, k) && r.passed) {
        r.passed = false;
        r.detail = "divisor mismatch";
      }
    }
  }
  return r;
}

st::SuiteResult both(const st::SuiteResult& a, const st::SuiteResult& b) {
  st::SuiteResult r;
  r.name = a.name;
  r.passed = a.passed && b.passed;
  r.checks = a.checks + b.checks;
  r.detail = !a.passed ? a.detail : b.detail;
  return r;
}

}  // namespace

int main() {
  const st::Options opt;
  const std::vector<Criterion> criteria{
      {1, "sigma two-way agreement", st::suite_sigma_agreement},
      {2, "sigma well-definedness", st::suite_sigma_invariance},
      {3, "realizability equals pre-log feasibility", st::suite_prelog_equivalence},
      {4, "deformation ranks and dual space", st::suite_deformation_ranks},
      {5, "kernel order oracle equivalence", [](const st::Options& o) { return both(st::suite_kernel_oracle(o), goldens()); }},
      {6, "count invariance", [](const st::Options& o) { return both(st::suite_count_invariance(o), goldens()); }},
      {7, "vertex parameter round trip", st::suite_vertex_round_trip},
      {8, "solver soundness", st::suite_solver_soundness},
      {9, "exact lattice normal forms", [](const st::Options& o) { return both(st::suite_exactmath(o), minor_oracle()); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    st::SuiteResult r;
    try {
      r = c.run(opt);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d: %s  %s  (%zu checks, %.2fs)%s%s\n", c.id, r.passed ? "PASS" : "FAIL", c.title.c_str(),
                r.checks, secs, r.detail.empty() ? "" : "  ", r.detail.c_str());
    failed += !r.passed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
