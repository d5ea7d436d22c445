#pragma once

// Parametrized tropical curves in the real torus S = R^2 / Lambda.
//
// A curve is stored through one lift of every vertex to R^2. Each edge carries
// its integer weight vector m (derivative from tail to head), a positive
// rational length l and an integer deck shift g, tied together by
//
//     pos(head) - pos(tail) = l * m + g1 * lambda1 + g2 * lambda2.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropreal/exactmath.hpp"
#include "tropreal/valuegroup.hpp"

namespace tropreal {

template <class T>
struct Vec2 {
  T x{0};
  T y{0};

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {T(a.x + b.x), T(a.y + b.y)}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {T(a.x - b.x), T(a.y - b.y)}; }
  friend Vec2 operator-(const Vec2& a) { return {T(-a.x), T(-a.y)}; }
  friend Vec2 operator*(const T& s, const Vec2& a) { return {T(s * a.x), T(s * a.y)}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
  bool is_zero() const { return x == 0 && y == 0; }
};

using Vec2i = Vec2<Integer>;
using Vec2q = Vec2<Rational>;

Vec2q to_rational(const Vec2i& v);
Integer det2(const Vec2i& a, const Vec2i& b);
/// Lattice multiplicity gcd(|x|, |y|); DomainError on the zero vector.
Integer multiplicity(const Vec2i& v);
/// v / multiplicity(v).
Vec2i primitive(const Vec2i& v);
/// The primitive normal covector (-q, p) of the direction (p, q) of v.
Vec2i primitive_normal(const Vec2i& v);
std::string to_string(const Vec2i& v);
std::string to_string(const Vec2q& v);

/// Multipliers of the period generators, all in one mode.
struct Multipliers {
  ModeKind kind = ModeKind::formal;
  /// Empty in FORMAL mode means every symbol stands for itself.
  std::map<Alpha, MultiplierSpec> values;
  friend bool operator==(const Multipliers&, const Multipliers&) = default;
};

struct PeriodLattice {
  Vec2i lambda1;
  Vec2i lambda2;
  Multipliers multipliers;

  Integer determinant() const { return det2(lambda1, lambda2); }
  /// g1 * lambda1 + g2 * lambda2.
  Vec2q combine(const Vec2i& g) const;
  /// (s, t) with p = s * lambda1 + t * lambda2.
  Vec2q coords(const Vec2q& p) const;
  Vec2q point(const Vec2q& coords) const;
  friend bool operator==(const PeriodLattice&, const PeriodLattice&) = default;
};

/// Equality mode built from the lattice's multipliers.
EqualityMode mode_for(const PeriodLattice& lattice, ModeKind kind, double tolerance = kDefaultTolerance);

struct TropicalVertex {
  std::string id;
  Vec2q pos;
};

struct TropicalEdge {
  std::string id;
  std::string tail;
  std::string head;
  Vec2i weight_vector;
  Rational length{1};
  Vec2i shift;
};

struct MarkedPoint {
  std::string edge;
  Rational t;
};

struct Flag {
  std::string vertex;
  std::string edge;
  friend auto operator<=>(const Flag&, const Flag&) = default;
};

class TropicalCurve {
 public:
  TropicalCurve() = default;
  TropicalCurve(PeriodLattice lattice, std::vector<TropicalVertex> vertices, std::vector<TropicalEdge> edges);

  const PeriodLattice& lattice() const noexcept { return lattice_; }
  const std::vector<TropicalVertex>& vertices() const noexcept { return vertices_; }
  const std::vector<TropicalEdge>& edges() const noexcept { return edges_; }

  std::optional<std::size_t> find_vertex(const std::string& id) const;
  std::optional<std::size_t> find_edge(const std::string& id) const;
  std::size_t vertex_index(const std::string& id) const;
  std::size_t edge_index(const std::string& id) const;
  const TropicalVertex& vertex(const std::string& id) const { return vertices_[vertex_index(id)]; }
  const TropicalEdge& edge(const std::string& id) const { return edges_[edge_index(id)]; }

  /// Edge indices incident to vertex index v, in edge-list order.
  const std::vector<std::size_t>& incident(std::size_t v) const { return incidence_.at(v); }
  std::size_t valence(std::size_t v) const { return incidence_.at(v).size(); }
  /// Weight vector of edge e pointing away from vertex v.
  Vec2i outgoing(std::size_t v, std::size_t e) const;
  /// All flags, edge by edge: (tail, e) then (head, e).
  std::vector<Flag> flags() const;

  friend bool operator==(const TropicalCurve& a, const TropicalCurve& b);

 private:
  void rebuild_index();

  PeriodLattice lattice_;
  std::vector<TropicalVertex> vertices_;
  std::vector<TropicalEdge> edges_;
  std::map<std::string, std::size_t> vertex_lookup_;
  std::map<std::string, std::size_t> edge_lookup_;
  std::vector<std::vector<std::size_t>> incidence_;
};

struct Violation {
  std::string code;
  std::string message;
};

/// Full list of violations; empty iff the curve is valid.
std::vector<Violation> validate(const TropicalCurve& curve);
/// Non-fatal remarks, e.g. edges whose lattice length is not a multiple of their weight.
std::vector<std::string> warnings(const TropicalCurve& curve);
/// Throws DomainError listing the violations when the curve is invalid.
void require_valid(const TropicalCurve& curve);

Integer edge_weight(const TropicalEdge& e);
Integer vertex_weight(const TropicalCurve& curve, const std::string& vertex);
Integer curve_delta(const TropicalCurve& curve);
/// gcd of the weights of the edges at the vertex.
Integer vertex_gamma(const TropicalCurve& curve, const std::string& vertex);
Integer genus(const TropicalCurve& curve);

struct Subdivision {
  TropicalCurve curve;
  /// New 2-valent vertex per marked point, in input order.
  std::vector<std::string> new_vertex_ids;
};

Subdivision subdivide(const TropicalCurve& curve, const std::vector<MarkedPoint>& points);

/// Move vertex lifts by integer combinations of the periods; shifts absorb the change.
TropicalCurve relift(const TropicalCurve& curve, const std::map<std::string, Vec2i>& move);

/// Relift so every vertex lies in the fundamental domain anchored at offset.
TropicalCurve reduce_to_domain(const TropicalCurve& curve, const Vec2q& offset);

enum class Side { B1, B2 };
std::string_view side_name(Side s);

struct Crossing {
  std::string edge;
  Side side;
  /// Net crossings of the wall family, positive when travelling tail to head
  /// increases the corresponding lattice coordinate.
  Integer signed_count;
  /// Weight vector of the edge oriented so that it crosses the walls towards
  /// increasing lattice coordinate: sign(signed_count) * m.
  Vec2i outward;
};

/// Wall crossings of every edge segment against the translates of the sides of
/// Delta = { offset + s lambda1 + t lambda2 : s, t in [0, 1) }.
std::vector<Crossing> crossings(const TropicalCurve& curve, const Vec2q& offset);

/// Point of N_R for offset coordinates (s, t) in the lattice basis.
Vec2q offset_from_lattice_coords(const PeriodLattice& lattice, const Vec2q& st);
/// Deterministic retry sequence (1/p, 1/p^2) in lattice coordinates for the k-th prime p.
Vec2q retry_offset(const PeriodLattice& lattice, std::size_t attempt);

using Mat2i = std::array<std::array<Integer, 2>, 2>;
Vec2i apply(const Mat2i& A, const Vec2i& v);
Vec2q apply(const Mat2i& A, const Vec2q& v);

/// Same curve with the multipliers replaced.
TropicalCurve with_multipliers(const TropicalCurve& curve, Multipliers multipliers);
/// Every symbol standing for itself.
Multipliers formal_multipliers();

/// Global unimodular change of coordinates of the torus.
TropicalCurve transform(const TropicalCurve& curve, const Mat2i& A);

}  // namespace tropreal
