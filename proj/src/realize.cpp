#include "tropreal/realize.hpp"

#include "tropreal/errors.hpp"

namespace tropreal {

namespace {

Vec2i divide(const Vec2i& v, const Integer& d) { return {exact_div(v.x, d), exact_div(v.y, d)}; }

}  // namespace

MulValue chi1(const Vec2i& v) {
  return MulValue::alpha(Alpha::a12, Rational(v.x)) * MulValue::alpha(Alpha::a11, Rational(-v.y));
}

MulValue chi2(const Vec2i& v) {
  return MulValue::alpha(Alpha::a22, Rational(v.x)) * MulValue::alpha(Alpha::a21, Rational(-v.y));
}

MulValue sigma_cocycle(const TropicalCurve& curve) {
  const Integer delta = curve_delta(curve);
  MulValue out;
  for (const auto& e : curve.edges()) {
    const Vec2i m = divide(e.weight_vector, delta);
    out *= mv_pow(chi1(m), Rational(-e.shift.x)) * mv_pow(chi2(m), Rational(-e.shift.y));
  }
  return out;
}

MulValue sigma_geometric(const TropicalCurve& curve, const Vec2q& offset) {
  const Integer delta = curve_delta(curve);
  MulValue out;
  for (const Crossing& c : crossings(curve, offset)) {
    const Vec2i outward = divide(c.outward, delta);
    const MulValue factor = c.side == Side::B1 ? chi1(outward) : chi2(outward);
    out *= mv_pow(factor, Rational(abs(c.signed_count)));
  }
  return out;
}

GeometricSigma sigma_geometric_auto(const TropicalCurve& curve, std::size_t max_attempts) {
  for (std::size_t attempt = 0;; ++attempt) {
    const Vec2q offset = retry_offset(curve.lattice(), attempt);
    try {
      return {sigma_geometric(curve, offset), offset, attempt};
    } catch (const DegenerateOffsetError&) {
      if (attempt + 1 >= max_attempts) throw;
    }
  }
}

int parity(const TropicalCurve& curve) {
  const Integer delta = curve_delta(curve);
  Integer sum = 0;
  for (std::size_t v = 0; v < curve.vertices().size(); ++v) {
    if (curve.valence(v) != 3) continue;
    sum += exact_div(vertex_weight(curve, curve.vertices()[v].id), delta);
  }
  return static_cast<int>(mod_floor(sum, 2).get_si());
}

MulValue sign_target(int p) { return p % 2 == 0 ? MulValue() : MulValue::minus_one(); }

RealizabilityReport realizability(const TropicalCurve& curve, const EqualityMode& mode) {
  RealizabilityReport r;
  r.sigma = sigma_cocycle(curve);
  r.parity = parity(curve);
  r.target = sign_target(r.parity);
  r.mode = mode.kind;
  const OneTest t = mv_is_one(r.sigma / r.target, mode);
  r.verdict = t.verdict;
  r.certificate = t.certificate;
  r.margin = t.margin;
  return r;
}

}  // namespace tropreal
