#pragma once

// Catalog curves, random generators and the property suites run by
// `tropreal selftest` and the acceptance binary.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tropreal/curve.hpp"
#include "tropreal/valuegroup.hpp"

namespace tropreal::selftest {

/// u = (0,0), v = (1,0); e1 (1,0) shift (0,0), e2 (0,1) shift (1,0), e3 (-1,-1) shift (1,1);
/// periods (1,-1) and (1,2).
TropicalCurve theta(const Multipliers& m = formal_multipliers());
/// theta with weight vectors doubled and lengths halved.
TropicalCurve theta2(const Multipliers& m = formal_multipliers());
/// n 2-valent vertices on a horizontal closed geodesic of the square torus.
TropicalCurve cycle(std::size_t n = 4, const Multipliers& m = formal_multipliers());
/// Marks e1 at 1/3 and e2 at 1/2.
std::vector<MarkedPoint> theta_marks();

Multipliers exact_multipliers(const std::map<Alpha, PolarRational>& values);
/// All multipliers equal to 1 in exact form.
Multipliers unit_multipliers();

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [lo, hi].
  long uniform(long lo, long hi);
  bool coin() { return uniform(0, 1) == 1; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

using GraphEdges = std::vector<std::pair<std::size_t, std::size_t>>;

GraphEdges theta_graph();
GraphEdges k4_graph();
GraphEdges prism_graph();
GraphEdges k33_graph();

/// Random balanced curve on the given graph with the period lattice spanned by
/// the cycle displacements; nullopt when the draw is degenerate.
std::optional<TropicalCurve> random_graph_curve(Rng& rng, std::size_t vertices, const GraphEdges& edges,
                                                long max_entry = 3);
TropicalCurve random_graph_curve_retry(Rng& rng, std::size_t vertices, const GraphEdges& edges, long max_entry = 3);
/// Weight vectors times k, lengths divided by k.
TropicalCurve scale_weights(const TropicalCurve& curve, long k);
std::vector<MarkedPoint> random_marks(Rng& rng, const TropicalCurve& curve, std::size_t count);
TropicalCurve random_subdivision(Rng& rng, const TropicalCurve& curve, std::size_t count);
TropicalCurve random_relift(Rng& rng, const TropicalCurve& curve);
Mat2i random_unimodular(Rng& rng, int det);
Multipliers random_exact(Rng& rng);
/// Exact multipliers making sigma equal (or, with realizable = false, opposite) to the sign target.
Multipliers tuned_exact(Rng& rng, const TropicalCurve& curve, bool realizable);

struct NamedCurve {
  std::string name;
  TropicalCurve curve;
  /// True when every vertex is 3-valent.
  bool trivalent = false;
};

/// Catalog and random 3-valent curves.
std::vector<NamedCurve> base_curves(Rng& rng);
/// count curves: catalog x subdivision x relift.
std::vector<NamedCurve> generated_curves(std::uint64_t seed, std::size_t count);

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  std::string detail;
};

struct Options {
  std::uint64_t seed = 20260101;
  /// Number of generated curves; suites scale their sample sizes with it.
  std::size_t cases = 60;
};

SuiteResult suite_sigma_agreement(const Options& opt);
SuiteResult suite_sigma_invariance(const Options& opt);
SuiteResult suite_prelog_equivalence(const Options& opt);
SuiteResult suite_deformation_ranks(const Options& opt);
SuiteResult suite_kernel_oracle(const Options& opt);
SuiteResult suite_count_invariance(const Options& opt);
SuiteResult suite_vertex_round_trip(const Options& opt);
SuiteResult suite_solver_soundness(const Options& opt);
SuiteResult suite_exactmath(const Options& opt);

std::vector<SuiteResult> run_all(const Options& opt);

}  // namespace tropreal::selftest
