#pragma once

// Deformation matrices, the dual obstruction space, rigidity under point
// constraints, and the order of Ker G tensored with C*.

#include <map>
#include <optional>
#include <vector>

#include "tropreal/curve.hpp"
#include "tropreal/errors.hpp"
#include "tropreal/realize.hpp"

namespace tropreal {

/// |E| x 2|V|: row e applies the primitive normal of m_e to head block minus tail block.
IntMatrix build_F(const TropicalCurve& curve);

struct DeformationRanks {
  std::size_t rank_kernel = 0;
  std::size_t rank_cokernel = 0;
};

DeformationRanks deformation_ranks(const TropicalCurve& curve);

struct DualFlagSpace {
  std::size_t dimension = 0;
  /// u_{v,e} per flag for the normalized generator; empty when dimension is 0.
  std::map<Flag, Vec2q> generator;
};

DualFlagSpace dual_flag_space(const TropicalCurve& curve);

/// Row pinning the position of a 2-valent vertex along its edge: a covector c
/// with c . d = 1 for the primitive direction d.
Vec2i slide_covector(const Vec2i& direction);

/// True iff the evaluation at the marked edges is injective on Ker F, taken
/// modulo sliding of 2-valent vertices along their edges.
bool rigidity_check(const TropicalCurve& curve, const std::vector<MarkedPoint>& marked);

struct DeformationMatrices {
  IntMatrix F_rows;
  /// F of the subdivided curve, two identity rows per marked vertex, then one
  /// slide row per unmarked 2-valent vertex.
  IntMatrix D_rows;
  Subdivision subdivision;
};

DeformationMatrices build_deformation_matrices(const TropicalCurve& curve, const std::vector<MarkedPoint>& marked);

struct KernelOrder {
  /// nullopt means infinite.
  std::optional<Integer> order;
  std::vector<Integer> elementary_divisors;
};

/// Order of { y in (C*)^n : y^D = 1 } from the Smith form of D.
KernelOrder kernel_order_of(const IntMatrix& D);
KernelOrder kernel_order_GCstar(const TropicalCurve& curve, const std::vector<MarkedPoint>& marked);

/// Exhaustive count of y in (Z/L)^n with D y = 0 mod L, L the smallest nonzero
/// maximal minor. Throws DomainError when D has deficient rank.
Integer kernel_order_bruteforce(const IntMatrix& D);
Integer kernel_order_bruteforce(const TropicalCurve& curve, const std::vector<MarkedPoint>& marked);

struct CountReport {
  std::optional<Integer> kernel_order;
  Integer edge_weight_product{1};
  std::optional<Integer> total;
  std::vector<Integer> elementary_divisors;
  RealizabilityReport realizability;
};

/// Product of edge weights with chains through 2-valent vertices counted once.
Integer chain_weight_product(const TropicalCurve& curve);

class NotRealizable : public Error {
 public:
  explicit NotRealizable(RealizabilityReport report)
      : Error("curve is not realizable: " + report.certificate), report_(std::move(report)) {}
  const RealizabilityReport& report() const noexcept { return report_; }

 private:
  RealizabilityReport report_;
};

/// Throws NotRealizable, or ConstraintError for a wrong number of marks or non-rigid marks.
CountReport count_curves(const TropicalCurve& curve, const std::vector<MarkedPoint>& marked, const EqualityMode& mode);

}  // namespace tropreal
