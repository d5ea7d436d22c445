#pragma once

// Multiplicative gluing system for pre-log curves: one unknown mu per flag,
// a product relation per vertex and a monodromy relation per edge.

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropreal/curve.hpp"
#include "tropreal/valuegroup.hpp"

namespace tropreal {

struct FlagCharacter {
  /// (-q, p) for the primitive outgoing direction (p, q).
  Vec2i normal;
  /// det L / w_e at a 3-valent vertex.
  std::optional<Integer> pullback_exponent;
  /// L^T applied to the normal: the exponent vector of the pulled-back coordinate.
  std::optional<Vec2i> pullback_monomial;
};

/// Outgoing vectors at one vertex (two or three of them); index selects the flag.
FlagCharacter flag_character(const std::vector<Vec2i>& outgoing, std::size_t index);
FlagCharacter flag_character(const TropicalCurve& curve, const std::string& vertex, const std::string& edge);

struct Relation {
  std::map<Flag, Integer> exponents;
  MulValue rhs;
};

Relation vertex_relation(const TropicalCurve& curve, const std::string& vertex);
Relation edge_relation(const TropicalCurve& curve, const std::string& edge);

struct MonomialSystem {
  std::vector<Flag> unknowns;
  std::map<Flag, std::size_t> unknown_index;
  IntMatrix exponent_matrix;
  std::vector<MulValue> rhs;
  /// "vertex u", "edge e1", ...
  std::vector<std::string> row_labels;
};

/// Vertex rows in vertex order, then edge rows in edge order.
MonomialSystem assemble_system(const TropicalCurve& curve);

struct FlagAssignment {
  std::map<Flag, MulValue> values;
};

struct Witness {
  /// Index of the zero row of the Smith form.
  std::size_t row = 0;
  /// Transformed right-hand side that had to equal one.
  MulValue value;
  OneTest test;
};

struct KernelGenerator {
  /// Exponent direction over the unknowns.
  std::vector<Integer> direction;
  /// 0 for a free (C*) direction, d > 1 for a torsion direction of order d.
  Integer order;
};

struct SolveResult {
  Decision feasible = Decision::no;
  /// Solution per unknown, in unknown order; empty unless feasible.
  std::vector<MulValue> solution;
  std::vector<Witness> witnesses;
  std::vector<KernelGenerator> kernel;
};

/// Solve prod_j x_j^{A_ij} = b_i over the value group.
SolveResult solve_system(const IntMatrix& A, const std::vector<MulValue>& b, const EqualityMode& mode);
SolveResult solve_monomial(const MonomialSystem& system, const EqualityMode& mode);

FlagAssignment to_assignment(const MonomialSystem& system, const SolveResult& result);

bool prelog_exists(const TropicalCurve& curve, const EqualityMode& mode);

struct RowCheck {
  std::string label;
  MulValue residual;
  OneTest test;
};

struct VerifyReport {
  std::vector<RowCheck> rows;
  bool pass = false;
};

VerifyReport verify_assignment(const TropicalCurve& curve, const FlagAssignment& assignment, const EqualityMode& mode);

/// Integers (l, m) with l*w1 - m*w2 = -sign*n*gamma (mod w3), smallest m first.
std::pair<Integer, Integer> solve_root_congruence(const Integer& w1, const Integer& w2, const Integer& w3,
                                                  const Integer& gamma, int sign, const Integer& n);

struct VertexModel {
  /// Columns are the first two outgoing vectors.
  IntMatrix L;
  MulValue beta1;
  MulValue beta2;
  MulValue zeta1;
  MulValue zeta2;
  /// Residual root of unity before correction.
  MulValue zeta3;
  Integer l;
  Integer m;
  Integer n;
};

/// mu_1 = beta2^{-D/w1}, mu_2 = beta1^{D/w2}, mu_3 = (-beta2/beta1)^{D/w3} with D = det L.
std::array<MulValue, 3> boundary_values(const std::array<Vec2i, 3>& outgoing, const MulValue& beta1,
                                        const MulValue& beta2);

/// Vertex parameters realising (nu1, nu2, nu3). Throws DomainError when the
/// product relation fails in the given mode.
VertexModel betas_from_mus(const std::array<Vec2i, 3>& outgoing, const MulValue& nu1, const MulValue& nu2,
                           const MulValue& nu3, const EqualityMode& mode = EqualityMode::formal());

struct NumericVertexModel {
  std::complex<double> beta1;
  std::complex<double> beta2;
  std::complex<double> zeta1;
  std::complex<double> zeta2;
  Integer l;
  Integer m;
  Integer n;
};

NumericVertexModel betas_from_mus_numeric(const std::array<Vec2i, 3>& outgoing, std::complex<double> nu1,
                                          std::complex<double> nu2, std::complex<double> nu3,
                                          double tolerance = kDefaultTolerance);

std::array<std::complex<double>, 3> boundary_values_numeric(const std::array<Vec2i, 3>& outgoing,
                                                            std::complex<double> beta1, std::complex<double> beta2);

}  // namespace tropreal
