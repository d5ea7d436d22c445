#include "tropreal/curve.hpp"

#include <algorithm>
#include <complex>
#include <queue>
#include <set>
#include <sstream>

#include "tropreal/errors.hpp"

namespace tropreal {

Vec2q to_rational(const Vec2i& v) { return {Rational(v.x), Rational(v.y)}; }

Integer det2(const Vec2i& a, const Vec2i& b) { return a.x * b.y - a.y * b.x; }

Integer multiplicity(const Vec2i& v) {
  if (v.is_zero()) throw DomainError("weight vector (0,0) has no multiplicity");
  return gcd(v.x, v.y);
}

Vec2i primitive(const Vec2i& v) {
  const Integer w = multiplicity(v);
  return {exact_div(v.x, w), exact_div(v.y, w)};
}

Vec2i primitive_normal(const Vec2i& v) {
  const Vec2i p = primitive(v);
  return {Integer(-p.y), p.x};
}

std::string to_string(const Vec2i& v) { return "(" + v.x.get_str() + "," + v.y.get_str() + ")"; }

std::string to_string(const Vec2q& v) { return "(" + to_string(v.x) + "," + to_string(v.y) + ")"; }

Vec2q PeriodLattice::combine(const Vec2i& g) const {
  return to_rational(Vec2i{Integer(g.x * lambda1.x + g.y * lambda2.x), Integer(g.x * lambda1.y + g.y * lambda2.y)});
}

Vec2q PeriodLattice::coords(const Vec2q& p) const {
  const Integer d = determinant();
  if (d == 0) throw DomainError("period lattice is degenerate");
  Rational s = (p.x * lambda2.y - p.y * lambda2.x) / Rational(d);
  Rational t = (lambda1.x * p.y - lambda1.y * p.x) / Rational(d);
  s.canonicalize();
  t.canonicalize();
  return {s, t};
}

Vec2q PeriodLattice::point(const Vec2q& c) const {
  return {Rational(c.x * lambda1.x + c.y * lambda2.x), Rational(c.x * lambda1.y + c.y * lambda2.y)};
}

EqualityMode mode_for(const PeriodLattice& lattice, ModeKind kind, double tolerance) {
  const Multipliers& mult = lattice.multipliers;
  EqualityMode mode;
  mode.kind = kind;
  mode.tolerance = tolerance;
  switch (kind) {
    case ModeKind::formal:
      if (mult.kind == ModeKind::formal) mode.values = mult.values;
      return mode;
    case ModeKind::exact:
      if (mult.kind != ModeKind::exact) {
        throw ConfigError("exact mode needs polar-rational multipliers; the curve has " +
                          std::string(mode_name(mult.kind)) + " multipliers");
      }
      for (Alpha a : kAllAlphas) {
        if (!mult.values.count(a)) {
          throw ConfigError("multiplier " + std::string(alpha_name(a)) + " has no exact value");
        }
      }
      mode.values = mult.values;
      return mode;
    case ModeKind::numeric:
      if (mult.kind == ModeKind::formal) {
        throw ConfigError("numeric mode needs valued multipliers; the curve has formal multipliers");
      }
      for (Alpha a : kAllAlphas) {
        const auto it = mult.values.find(a);
        if (it == mult.values.end()) {
          throw ConfigError("multiplier " + std::string(alpha_name(a)) + " has no value");
        }
        mode.values[a] = to_complex(it->second);
      }
      if (!(tolerance > 0)) throw ConfigError("numeric tolerance must be positive");
      return mode;
  }
  return mode;
}

// ---------------------------------------------------------------------------
// TropicalCurve

TropicalCurve::TropicalCurve(PeriodLattice lattice, std::vector<TropicalVertex> vertices,
                             std::vector<TropicalEdge> edges)
    : lattice_(std::move(lattice)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  rebuild_index();
}

void TropicalCurve::rebuild_index() {
  vertex_lookup_.clear();
  edge_lookup_.clear();
  incidence_.assign(vertices_.size(), {});
  for (std::size_t i = 0; i < vertices_.size(); ++i) vertex_lookup_.emplace(vertices_[i].id, i);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    edge_lookup_.emplace(edges_[e].id, e);
    const auto t = vertex_lookup_.find(edges_[e].tail);
    const auto h = vertex_lookup_.find(edges_[e].head);
    if (t != vertex_lookup_.end()) incidence_[t->second].push_back(e);
    if (h != vertex_lookup_.end() && (t == vertex_lookup_.end() || h->second != t->second)) {
      incidence_[h->second].push_back(e);
    }
  }
}

std::optional<std::size_t> TropicalCurve::find_vertex(const std::string& id) const {
  const auto it = vertex_lookup_.find(id);
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> TropicalCurve::find_edge(const std::string& id) const {
  const auto it = edge_lookup_.find(id);
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t TropicalCurve::vertex_index(const std::string& id) const {
  if (auto i = find_vertex(id)) return *i;
  throw DomainError("unknown vertex '" + id + "'");
}

std::size_t TropicalCurve::edge_index(const std::string& id) const {
  if (auto i = find_edge(id)) return *i;
  throw DomainError("unknown edge '" + id + "'");
}

Vec2i TropicalCurve::outgoing(std::size_t v, std::size_t e) const {
  const TropicalEdge& edge = edges_.at(e);
  const std::string& id = vertices_.at(v).id;
  if (edge.tail == id) return edge.weight_vector;
  if (edge.head == id) return -edge.weight_vector;
  throw DomainError("vertex '" + id + "' is not an endpoint of edge '" + edge.id + "'");
}

std::vector<Flag> TropicalCurve::flags() const {
  std::vector<Flag> out;
  out.reserve(2 * edges_.size());
  for (const auto& e : edges_) {
    out.push_back({e.tail, e.id});
    out.push_back({e.head, e.id});
  }
  return out;
}

bool operator==(const TropicalCurve& a, const TropicalCurve& b) {
  if (!(a.lattice_ == b.lattice_) || a.vertices_.size() != b.vertices_.size() ||
      a.edges_.size() != b.edges_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.vertices_.size(); ++i) {
    if (a.vertices_[i].id != b.vertices_[i].id || !(a.vertices_[i].pos == b.vertices_[i].pos)) return false;
  }
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const auto& x = a.edges_[i];
    const auto& y = b.edges_[i];
    if (x.id != y.id || x.tail != y.tail || x.head != y.head || !(x.weight_vector == y.weight_vector) ||
        x.length != y.length || !(x.shift == y.shift)) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<Violation> validate(const TropicalCurve& curve) {
  std::vector<Violation> out;
  auto add = [&out](std::string code, std::string message) {
    out.push_back({std::move(code), std::move(message)});
  };
  const PeriodLattice& lat = curve.lattice();

  if (lat.determinant() == 0) {
    add("lattice-determinant", "period vectors " + to_string(lat.lambda1) + " and " + to_string(lat.lambda2) +
                                   " have determinant zero");
  }
  for (const auto& [sym, spec] : lat.multipliers.values) {
    if (const auto* p = std::get_if<PolarRational>(&spec); p && p->modulus <= 0) {
      add("multiplier", std::string(alpha_name(sym)) + " must have positive modulus");
    }
    if (const auto* c = std::get_if<std::complex<double>>(&spec); c && std::abs(*c) == 0.0) {
      add("multiplier", std::string(alpha_name(sym)) + " must be nonzero");
    }
  }
  if (curve.vertices().empty()) {
    add("empty", "curve has no vertices");
    return out;
  }

  std::set<std::string> seen;
  for (const auto& v : curve.vertices()) {
    if (!seen.insert(v.id).second) add("duplicate-id", "vertex id '" + v.id + "' is used twice");
  }
  seen.clear();
  bool dangling = false;
  for (const auto& e : curve.edges()) {
    if (!seen.insert(e.id).second) add("duplicate-id", "edge id '" + e.id + "' is used twice");
    for (const auto* end : {&e.tail, &e.head}) {
      if (!curve.find_vertex(*end)) {
        add("unknown-vertex", "edge '" + e.id + "' refers to unknown vertex '" + *end + "'");
        dangling = true;
      }
    }
  }
  if (dangling) return out;

  // Connectivity by breadth-first search over the incidence lists.
  {
    std::vector<bool> reached(curve.vertices().size(), false);
    std::queue<std::size_t> todo;
    todo.push(0);
    reached[0] = true;
    while (!todo.empty()) {
      const std::size_t v = todo.front();
      todo.pop();
      for (std::size_t e : curve.incident(v)) {
        const auto& edge = curve.edges()[e];
        for (const auto* end : {&edge.tail, &edge.head}) {
          const std::size_t w = curve.vertex_index(*end);
          if (!reached[w]) {
            reached[w] = true;
            todo.push(w);
          }
        }
      }
    }
    if (std::find(reached.begin(), reached.end(), false) != reached.end()) {
      add("disconnected", "underlying graph is not connected");
    }
  }

  for (const auto& e : curve.edges()) {
    if (e.tail == e.head) add("loop", "edge '" + e.id + "' is a loop at '" + e.tail + "'");
  }
  for (std::size_t v = 0; v < curve.vertices().size(); ++v) {
    const std::size_t val = curve.valence(v);
    if (val != 2 && val != 3) {
      add("valence", "vertex '" + curve.vertices()[v].id + "' has valence " + std::to_string(val) +
                         " (expected 2 or 3)");
    }
  }
  bool zero_weight = false;
  for (const auto& e : curve.edges()) {
    if (e.weight_vector.is_zero()) {
      add("zero-weight", "edge '" + e.id + "' has weight vector (0,0)");
      zero_weight = true;
    }
  }

  for (std::size_t v = 0; v < curve.vertices().size(); ++v) {
    const auto& inc = curve.incident(v);
    const std::string& id = curve.vertices()[v].id;
    if (std::any_of(inc.begin(), inc.end(), [&](std::size_t e) { return curve.edges()[e].tail == curve.edges()[e].head; })) {
      continue;
    }
    Vec2i sum;
    for (std::size_t e : inc) sum = sum + curve.outgoing(v, e);
    if (inc.size() == 2 && !sum.is_zero()) {
      add("two-valent", "2-valent vertex '" + id + "': weight vectors " + to_string(curve.outgoing(v, inc[0])) +
                            " and " + to_string(curve.outgoing(v, inc[1])) + " are not opposite");
      continue;
    }
    if (!sum.is_zero()) {
      add("balancing", "vertex '" + id + "' is not balanced: outgoing weight vectors sum to " + to_string(sum));
      continue;
    }
    if (inc.size() == 3 && !zero_weight && det2(curve.outgoing(v, inc[0]), curve.outgoing(v, inc[1])) == 0) {
      add("immersion", "3-valent vertex '" + id + "' has parallel weight vectors (vertex weight 0)");
    }
  }

  if (lat.determinant() != 0) {
    for (const auto& e : curve.edges()) {
      const Vec2q lhs = curve.vertex(e.head).pos - curve.vertex(e.tail).pos;
      const Vec2q rhs = e.length * to_rational(e.weight_vector) + lat.combine(e.shift);
      if (!(lhs == rhs)) {
        add("lift-relation", "edge '" + e.id + "': pos(head) - pos(tail) = " + to_string(lhs) +
                                 " but length * weight + shift = " + to_string(rhs));
      }
    }
  }
  for (const auto& e : curve.edges()) {
    if (e.length <= 0) add("length", "edge '" + e.id + "' has non-positive length " + to_string(e.length));
  }
  return out;
}

std::vector<std::string> warnings(const TropicalCurve& curve) {
  std::vector<std::string> out;
  for (const auto& e : curve.edges()) {
    if (e.length.get_den() != 1) {
      out.push_back("edge '" + e.id + "': lattice length " + to_string(Rational(e.length * multiplicity(e.weight_vector))) +
                    " is not an integral multiple of its weight");
    }
  }
  return out;
}

void require_valid(const TropicalCurve& curve) {
  const auto v = validate(curve);
  if (v.empty()) return;
  std::string msg = "invalid curve:";
  for (const auto& x : v) msg += " [" + x.code + "] " + x.message + ";";
  throw DomainError(msg);
}

// ---------------------------------------------------------------------------
// Invariants

Integer edge_weight(const TropicalEdge& e) { return multiplicity(e.weight_vector); }

Integer vertex_weight(const TropicalCurve& curve, const std::string& vertex) {
  const std::size_t v = curve.vertex_index(vertex);
  const auto& inc = curve.incident(v);
  if (inc.size() == 2) return 1;
  if (inc.size() != 3) {
    throw DomainError("vertex '" + vertex + "' has valence " + std::to_string(inc.size()) + "; weight needs 2 or 3");
  }
  return abs(det2(curve.outgoing(v, inc[0]), curve.outgoing(v, inc[1])));
}

Integer curve_delta(const TropicalCurve& curve) {
  Integer d = 0;
  for (const auto& e : curve.edges()) d = gcd(d, edge_weight(e));
  return d;
}

Integer vertex_gamma(const TropicalCurve& curve, const std::string& vertex) {
  Integer g = 0;
  for (std::size_t e : curve.incident(curve.vertex_index(vertex))) g = gcd(g, edge_weight(curve.edges()[e]));
  return g;
}

Integer genus(const TropicalCurve& curve) {
  return Integer(static_cast<long>(curve.edges().size())) - static_cast<long>(curve.vertices().size()) + 1;
}

// ---------------------------------------------------------------------------
// Subdivision, relifting, transforms

Subdivision subdivide(const TropicalCurve& curve, const std::vector<MarkedPoint>& points) {
  std::map<std::string, std::vector<std::pair<Rational, std::size_t>>> by_edge;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    curve.edge_index(p.edge);
    if (p.t <= 0 || p.t >= 1) {
      throw DomainError("marked point on '" + p.edge + "' at t = " + to_string(p.t) + " is not in (0,1)");
    }
    auto& list = by_edge[p.edge];
    for (const auto& [t, j] : list) {
      if (t == p.t) throw DomainError("duplicate subdivision position t = " + to_string(p.t) + " on '" + p.edge + "'");
    }
    list.emplace_back(p.t, i);
  }

  std::set<std::string> taken_vertices;
  std::set<std::string> taken_edges;
  for (const auto& v : curve.vertices()) taken_vertices.insert(v.id);
  for (const auto& e : curve.edges()) taken_edges.insert(e.id);
  auto fresh = [](std::set<std::string>& taken, std::string id) {
    while (taken.count(id)) id += "'";
    taken.insert(id);
    return id;
  };

  Subdivision out;
  out.new_vertex_ids.resize(points.size());
  std::vector<TropicalVertex> vertices = curve.vertices();
  std::vector<TropicalEdge> edges;
  for (const auto& e : curve.edges()) {
    auto it = by_edge.find(e.id);
    if (it == by_edge.end()) {
      edges.push_back(e);
      continue;
    }
    auto marks = it->second;
    std::sort(marks.begin(), marks.end());
    const Vec2q start = curve.vertex(e.tail).pos;
    const Vec2q step = e.length * to_rational(e.weight_vector);
    std::string prev = e.tail;
    Rational prev_t = 0;
    for (std::size_t k = 0; k < marks.size(); ++k) {
      const auto& [t, idx] = marks[k];
      const std::string vid = fresh(taken_vertices, e.id + "@" + to_string(t));
      vertices.push_back({vid, start + t * step});
      out.new_vertex_ids[idx] = vid;
      edges.push_back({fresh(taken_edges, e.id + "." + std::to_string(k + 1)), prev, vid, e.weight_vector,
                       Rational((t - prev_t) * e.length), Vec2i{}});
      prev = vid;
      prev_t = t;
    }
    edges.push_back({fresh(taken_edges, e.id + "." + std::to_string(marks.size() + 1)), prev, e.head,
                     e.weight_vector, Rational((1 - prev_t) * e.length), e.shift});
  }
  out.curve = TropicalCurve(curve.lattice(), std::move(vertices), std::move(edges));
  return out;
}

TropicalCurve relift(const TropicalCurve& curve, const std::map<std::string, Vec2i>& move) {
  for (const auto& [id, m] : move) curve.vertex_index(id);
  auto get = [&move](const std::string& id) {
    const auto it = move.find(id);
    return it == move.end() ? Vec2i{} : it->second;
  };
  std::vector<TropicalVertex> vertices = curve.vertices();
  for (auto& v : vertices) v.pos = v.pos + curve.lattice().combine(get(v.id));
  std::vector<TropicalEdge> edges = curve.edges();
  for (auto& e : edges) e.shift = e.shift + get(e.head) - get(e.tail);
  return TropicalCurve(curve.lattice(), std::move(vertices), std::move(edges));
}

TropicalCurve reduce_to_domain(const TropicalCurve& curve, const Vec2q& offset) {
  std::map<std::string, Vec2i> move;
  for (const auto& v : curve.vertices()) {
    const Vec2q c = curve.lattice().coords(v.pos - offset);
    move[v.id] = Vec2i{Integer(-floor(c.x)), Integer(-floor(c.y))};
  }
  return relift(curve, move);
}

std::string_view side_name(Side s) { return s == Side::B1 ? "B1" : "B2"; }

std::vector<Crossing> crossings(const TropicalCurve& curve, const Vec2q& offset) {
  const PeriodLattice& lat = curve.lattice();
  for (const auto& v : curve.vertices()) {
    const Vec2q c = lat.coords(v.pos - offset);
    if (c.x.get_den() == 1 || c.y.get_den() == 1) {
      throw DegenerateOffsetError(v.id, "vertex '" + v.id + "' lies on a wall of the fundamental domain at offset " +
                                            to_string(offset));
    }
  }
  std::vector<Crossing> out;
  for (const auto& e : curve.edges()) {
    const Vec2q a = lat.coords(curve.vertex(e.tail).pos - offset);
    const Vec2q d = lat.coords(e.length * to_rational(e.weight_vector));
    const Vec2q b = a + d;

    // A corner on the segment shows up as an s-wall crossing with integral t.
    if (d.x != 0) {
      const Integer lo = floor(Rational(std::min(a.x, b.x)));
      const Integer hi = floor(Rational(std::max(a.x, b.x)));
      for (Integer k = lo + 1; k <= hi; ++k) {
        Rational tau = (Rational(k) - a.x) / d.x;
        Rational t = a.y + tau * d.y;
        t.canonicalize();
        if (t.get_den() == 1) {
          throw DegenerateOffsetError(e.id, "edge '" + e.id + "' passes through a corner of the fundamental domain at offset " +
                                                to_string(offset));
        }
      }
    }
    const Integer ns = floor(b.x) - floor(a.x);
    const Integer nt = floor(b.y) - floor(a.y);
    if (ns != 0) out.push_back({e.id, Side::B1, ns, ns > 0 ? e.weight_vector : -e.weight_vector});
    if (nt != 0) out.push_back({e.id, Side::B2, nt, nt > 0 ? e.weight_vector : -e.weight_vector});
  }
  return out;
}

Vec2q offset_from_lattice_coords(const PeriodLattice& lattice, const Vec2q& st) { return lattice.point(st); }

Vec2q retry_offset(const PeriodLattice& lattice, std::size_t attempt) {
  Integer p = 2;
  for (std::size_t i = 0; i < attempt; ++i) mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  return lattice.point({make_rational(1, p), make_rational(1, Integer(p * p))});
}

Vec2i apply(const Mat2i& A, const Vec2i& v) {
  return {Integer(A[0][0] * v.x + A[0][1] * v.y), Integer(A[1][0] * v.x + A[1][1] * v.y)};
}

Vec2q apply(const Mat2i& A, const Vec2q& v) {
  return {Rational(A[0][0] * v.x + A[0][1] * v.y), Rational(A[1][0] * v.x + A[1][1] * v.y)};
}

namespace {

/// Index of alpha_{ij} for generator i and coordinate j (both 0-based).
Alpha alpha_at(int i, int j) { return static_cast<Alpha>(2 * i + j); }

Multipliers transform_multipliers(const Multipliers& mult, const Mat2i& A) {
  Multipliers out;
  out.kind = mult.kind;
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      const Alpha target = alpha_at(i, k);
      switch (mult.kind) {
        case ModeKind::formal: {
          MulValue v;
          for (int j = 0; j < 2; ++j) {
            const Alpha src = alpha_at(i, j);
            const auto it = mult.values.find(src);
            const MulValue base = (it != mult.values.end() && std::holds_alternative<MulValue>(it->second))
                                      ? std::get<MulValue>(it->second)
                                      : MulValue::alpha(src);
            v = v * mv_pow(base, Rational(A[k][j]));
          }
          out.values[target] = v;
          break;
        }
        case ModeKind::exact: {
          PolarRational v;
          for (int j = 0; j < 2; ++j) {
            const auto& p = std::get<PolarRational>(mult.values.at(alpha_at(i, j)));
            Rational r;
            mpz_pow_ui(r.get_num_mpz_t(), p.modulus.get_num_mpz_t(), abs(A[k][j]).get_ui());
            mpz_pow_ui(r.get_den_mpz_t(), p.modulus.get_den_mpz_t(), abs(A[k][j]).get_ui());
            r.canonicalize();
            if (A[k][j] < 0) r = 1 / r;
            v.modulus *= r;
            v.turns += Rational(A[k][j]) * p.turns;
          }
          v.turns = frac(v.turns);
          out.values[target] = v;
          break;
        }
        case ModeKind::numeric: {
          std::complex<double> v = 1.0;
          for (int j = 0; j < 2; ++j) {
            v *= std::pow(to_complex(mult.values.at(alpha_at(i, j))), static_cast<int>(A[k][j].get_si()));
          }
          out.values[target] = v;
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace

TropicalCurve with_multipliers(const TropicalCurve& curve, Multipliers multipliers) {
  PeriodLattice lat = curve.lattice();
  lat.multipliers = std::move(multipliers);
  return TropicalCurve(std::move(lat), curve.vertices(), curve.edges());
}

Multipliers formal_multipliers() {
  Multipliers m;
  m.kind = ModeKind::formal;
  for (Alpha a : kAllAlphas) m.values[a] = MulValue::alpha(a);
  return m;
}

TropicalCurve transform(const TropicalCurve& curve, const Mat2i& A) {
  const Integer d = A[0][0] * A[1][1] - A[0][1] * A[1][0];
  if (abs(d) != 1) throw DomainError("transform matrix is not unimodular (det = " + d.get_str() + ")");
  PeriodLattice lat;
  lat.lambda1 = tropreal::apply(A, curve.lattice().lambda1);
  lat.lambda2 = tropreal::apply(A, curve.lattice().lambda2);
  lat.multipliers = transform_multipliers(curve.lattice().multipliers, A);
  std::vector<TropicalVertex> vertices = curve.vertices();
  for (auto& v : vertices) v.pos = tropreal::apply(A, v.pos);
  std::vector<TropicalEdge> edges = curve.edges();
  for (auto& e : edges) e.weight_vector = tropreal::apply(A, e.weight_vector);
  return TropicalCurve(std::move(lat), std::move(vertices), std::move(edges));
}

}  // namespace tropreal
