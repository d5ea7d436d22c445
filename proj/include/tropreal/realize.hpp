#pragma once

// The invariant sigma, the sign parity and the realizability verdict.

#include <string>

#include "tropreal/curve.hpp"
#include "tropreal/valuegroup.hpp"

namespace tropreal {

/// chi_1(a, b) = a12^a * a11^-b.
MulValue chi1(const Vec2i& v);
/// chi_2(a, b) = a22^a * a21^-b.
MulValue chi2(const Vec2i& v);

/// sigma from the deck shifts: prod_e chi_1(m_e / delta)^-g1 * chi_2(m_e / delta)^-g2.
MulValue sigma_cocycle(const TropicalCurve& curve);

/// sigma from wall crossings of the fundamental parallelogram anchored at offset.
MulValue sigma_geometric(const TropicalCurve& curve, const Vec2q& offset);

struct GeometricSigma {
  MulValue sigma;
  Vec2q offset;
  /// Number of degenerate offsets skipped before this one.
  std::size_t retries = 0;
};

/// sigma_geometric over the deterministic retry sequence; throws
/// DegenerateOffsetError once max_attempts offsets have failed.
GeometricSigma sigma_geometric_auto(const TropicalCurve& curve, std::size_t max_attempts = 16);

/// (sum of w_v / delta over 3-valent vertices) mod 2.
int parity(const TropicalCurve& curve);

/// (-1)^parity as a phase.
MulValue sign_target(int parity);

struct RealizabilityReport {
  MulValue sigma;
  int parity = 0;
  MulValue target;
  Decision verdict = Decision::no;
  ModeKind mode = ModeKind::formal;
  /// Rendering of sigma / target after substitution, or the numeric distance.
  std::string certificate;
  double margin = 0.0;
};

RealizabilityReport realizability(const TropicalCurve& curve, const EqualityMode& mode);

}  // namespace tropreal
