#include "tropreal/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "tropreal/errors.hpp"
#include "tropreal/io.hpp"
#include "tropreal/moduli.hpp"
#include "tropreal/prelog.hpp"
#include "tropreal/realize.hpp"

namespace tropreal::selftest {

long Rng::uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

Vec2q vq(long x, long y) { return {Rational(x), Rational(y)}; }

TropicalEdge edge(std::string id, std::string tail, std::string head, Vec2i m, Rational len, Vec2i shift) {
  return {std::move(id), std::move(tail), std::move(head), m, std::move(len), shift};
}

Vec2i vi(long x, long y) { return {Integer(x), Integer(y)}; }

std::string dump(const TropicalCurve& c) { return curve_to_json({c, {}}).dump(); }

/// Collects the first failure of a suite.
struct Recorder {
  SuiteResult result;
  explicit Recorder(std::string name) { result.name = std::move(name); }
  void check(bool ok, const std::function<std::string()>& what) {
    ++result.checks;
    if (!ok && result.passed) {
      result.passed = false;
      result.detail = what();
    }
  }
  void fail(const std::string& what) { check(false, [&] { return what; }); }
};

}  // namespace

TropicalCurve theta(const Multipliers& m) {
  PeriodLattice lat{vi(1, -1), vi(1, 2), m};
  return TropicalCurve(lat, {{"u", vq(0, 0)}, {"v", vq(1, 0)}},
                       {edge("e1", "u", "v", vi(1, 0), 1, vi(0, 0)), edge("e2", "u", "v", vi(0, 1), 1, vi(1, 0)),
                        edge("e3", "u", "v", vi(-1, -1), 1, vi(1, 1))});
}

TropicalCurve theta2(const Multipliers& m) { return scale_weights(theta(m), 2); }

TropicalCurve cycle(std::size_t n, const Multipliers& m) {
  if (n < 2) throw DomainError("a cycle needs at least two vertices");
  PeriodLattice lat{vi(1, 0), vi(0, 1), m};
  std::vector<TropicalVertex> vs;
  std::vector<TropicalEdge> es;
  const long N = static_cast<long>(n);
  for (long i = 0; i < N; ++i) vs.push_back({"c" + std::to_string(i), {q(i, N), q(1, 3)}});
  for (long i = 0; i < N; ++i) {
    const long j = (i + 1) % N;
    es.push_back(edge("f" + std::to_string(i), vs[i].id, vs[j].id, vi(1, 0), q(1, N), vi(j == 0 ? -1 : 0, 0)));
  }
  return TropicalCurve(lat, vs, es);
}

std::vector<MarkedPoint> theta_marks() { return {{"e1", q(1, 3)}, {"e2", q(1, 2)}}; }

Multipliers exact_multipliers(const std::map<Alpha, PolarRational>& values) {
  Multipliers m;
  m.kind = ModeKind::exact;
  for (const auto& [a, v] : values) m.values[a] = v;
  return m;
}

Multipliers unit_multipliers() {
  std::map<Alpha, PolarRational> v;
  for (Alpha a : kAllAlphas) v[a] = PolarRational{1, 0};
  return exact_multipliers(v);
}

GraphEdges theta_graph() { return {{0, 1}, {0, 1}, {0, 1}}; }
GraphEdges k4_graph() { return {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {3, 1}}; }
GraphEdges prism_graph() { return {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}}; }
GraphEdges k33_graph() { return {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}}; }

std::optional<TropicalCurve> random_graph_curve(Rng& rng, std::size_t n, const GraphEdges& graph, long max_entry) {
  const std::size_t E = graph.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t e = 0; e < E; ++e) {
    adj[graph[e].first].push_back(e);
    adj[graph[e].second].push_back(e);
  }
  std::vector<long> parent_edge(n, -1);
  std::vector<std::size_t> parent(n, 0), depth(n, 0), order{0};
  std::vector<bool> seen(n, false), tree(E, false);
  seen[0] = true;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t x = order[k];
    for (std::size_t e : adj[x]) {
      const std::size_t y = graph[e].first == x ? graph[e].second : graph[e].first;
      if (seen[y]) continue;
      seen[y] = true;
      tree[e] = true;
      parent[y] = x;
      parent_edge[y] = static_cast<long>(e);
      depth[y] = depth[x] + 1;
      order.push_back(y);
    }
  }
  if (order.size() != n) return std::nullopt;

  std::vector<Vec2i> m(E);
  auto move = [&](std::size_t from, std::size_t e, const Vec2i& z) {
    m[e] = graph[e].first == from ? m[e] + z : m[e] - z;
  };
  for (std::size_t f = 0; f < E; ++f) {
    if (tree[f]) continue;
    Vec2i z;
    while (z.is_zero()) z = vi(rng.uniform(-max_entry, max_entry), rng.uniform(-max_entry, max_entry));
    m[f] = m[f] + z;
    std::size_t a = graph[f].first, b = graph[f].second;
    while (a != b) {
      if (depth[b] >= depth[a]) {
        move(b, static_cast<std::size_t>(parent_edge[b]), z);
        b = parent[b];
      } else {
        const std::size_t e = static_cast<std::size_t>(parent_edge[a]);
        move(parent[a], e, z);
        a = parent[a];
      }
    }
  }
  for (const auto& v : m) {
    if (v.is_zero()) return std::nullopt;
  }

  std::vector<Rational> len(E);
  for (auto& l : len) l = rng.uniform(1, 3);
  std::vector<Vec2q> pos(n);
  for (std::size_t k = 1; k < order.size(); ++k) {
    const std::size_t y = order[k];
    const std::size_t e = static_cast<std::size_t>(parent_edge[y]);
    const Vec2q step = len[e] * to_rational(m[e]);
    pos[y] = graph[e].first == parent[y] ? pos[parent[y]] + step : pos[parent[y]] - step;
  }
  std::vector<std::vector<Integer>> disp;
  std::vector<std::size_t> cyc;
  for (std::size_t f = 0; f < E; ++f) {
    if (tree[f]) continue;
    const Vec2q d = pos[graph[f].second] - pos[graph[f].first] - len[f] * to_rational(m[f]);
    disp.push_back({d.x.get_num(), d.y.get_num()});
    cyc.push_back(f);
  }
  if (disp.size() < 2) return std::nullopt;
  const HnfResult h = hnf(IntMatrix::from_rows(disp, 2));
  Vec2i l1{h.H(0, 0), h.H(0, 1)}, l2{h.H(1, 0), h.H(1, 1)};
  if (det2(l1, l2) == 0 || abs(det2(l1, l2)) > 5000) return std::nullopt;
  const Mat2i U = random_unimodular(rng, rng.coin() ? 1 : -1);
  PeriodLattice lat{Vec2i{Integer(U[0][0] * l1.x + U[0][1] * l2.x), Integer(U[0][0] * l1.y + U[0][1] * l2.y)},
                    Vec2i{Integer(U[1][0] * l1.x + U[1][1] * l2.x), Integer(U[1][0] * l1.y + U[1][1] * l2.y)},
                    formal_multipliers()};

  std::vector<TropicalVertex> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back({"v" + std::to_string(i), pos[i]});
  std::vector<TropicalEdge> es;
  for (std::size_t e = 0; e < E; ++e) {
    const Vec2q d = pos[graph[e].second] - pos[graph[e].first] - len[e] * to_rational(m[e]);
    const Vec2q c = lat.coords(d);
    es.push_back(edge("e" + std::to_string(e + 1), vs[graph[e].first].id, vs[graph[e].second].id, m[e], len[e],
                      Vec2i{c.x.get_num(), c.y.get_num()}));
  }
  TropicalCurve curve(lat, vs, es);
  if (!validate(curve).empty()) return std::nullopt;
  return curve;
}

TropicalCurve random_graph_curve_retry(Rng& rng, std::size_t n, const GraphEdges& edges, long max_entry) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    if (auto c = random_graph_curve(rng, n, edges, max_entry)) return *c;
  }
  throw Error("random curve generation kept producing degenerate curves");
}

TropicalCurve scale_weights(const TropicalCurve& curve, long k) {
  std::vector<TropicalEdge> es = curve.edges();
  for (auto& e : es) {
    e.weight_vector = Integer(k) * e.weight_vector;
    e.length /= k;
  }
  return TropicalCurve(curve.lattice(), curve.vertices(), es);
}

std::vector<MarkedPoint> random_marks(Rng& rng, const TropicalCurve& curve, std::size_t count) {
  std::vector<std::size_t> idx(curve.edges().size());
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng.engine());
  std::vector<MarkedPoint> out;
  for (std::size_t i = 0; i < count; ++i) {
    const long d = rng.uniform(2, 7);
    out.push_back({curve.edges()[idx[i % idx.size()]].id, q(rng.uniform(1, d - 1), d)});
  }
  std::set<std::pair<std::string, Rational>> seen;
  std::vector<MarkedPoint> unique;
  for (auto& p : out) {
    if (seen.insert({p.edge, p.t}).second) unique.push_back(p);
  }
  return unique;
}

TropicalCurve random_subdivision(Rng& rng, const TropicalCurve& curve, std::size_t count) {
  return subdivide(curve, random_marks(rng, curve, count)).curve;
}

TropicalCurve random_relift(Rng& rng, const TropicalCurve& curve) {
  std::map<std::string, Vec2i> mv;
  for (const auto& v : curve.vertices()) mv[v.id] = vi(rng.uniform(-2, 2), rng.uniform(-2, 2));
  return relift(curve, mv);
}

Mat2i random_unimodular(Rng& rng, int det) {
  Mat2i A{{{Integer(1), Integer(0)}, {Integer(0), Integer(1)}}};
  const int steps = static_cast<int>(rng.uniform(1, 3));
  for (int s = 0; s < steps; ++s) {
    const Integer k = rng.uniform(-2, 2);
    if (rng.coin()) {
      for (int j = 0; j < 2; ++j) A[0][j] += k * A[1][j];
    } else {
      for (int j = 0; j < 2; ++j) A[1][j] += k * A[0][j];
    }
  }
  if (det < 0) std::swap(A[0], A[1]);
  return A;
}

namespace {

Rational small_positive(Rng& rng) { return q(rng.uniform(1, 6), rng.uniform(1, 6)); }

Rational random_turns(Rng& rng) { return q(rng.uniform(0, 11), 12); }

}  // namespace

Multipliers random_exact(Rng& rng) {
  std::map<Alpha, PolarRational> v;
  for (Alpha a : kAllAlphas) v[a] = {small_positive(rng), random_turns(rng)};
  return exact_multipliers(v);
}

Multipliers tuned_exact(Rng& rng, const TropicalCurve& curve, bool realizable) {
  const MulValue sigma = sigma_cocycle(curve);
  const auto& exps = sigma.alpha_exponents();
  if (exps.empty()) return random_exact(rng);
  const Alpha s = exps.begin()->first;
  const Rational k = exps.begin()->second;
  const Integer kk = k.get_num();
  std::map<Alpha, PolarRational> v;
  Rational modulus = 1;
  Rational turns = Rational(parity(curve), 2) + (realizable ? Rational(0) : q(1, 2));
  for (Alpha a : kAllAlphas) {
    if (a == s) continue;
    const auto it = exps.find(a);
    if (it == exps.end()) {
      v[a] = {small_positive(rng), random_turns(rng)};
      continue;
    }
    const Rational r = small_positive(rng);
    Rational pw = 1;
    for (Integer i = 0; i < abs(kk); ++i) pw *= r;
    const Rational t = random_turns(rng);
    v[a] = {pw, t};
    const Integer e = it->second.get_num();
    for (Integer i = 0; i < abs(e); ++i) modulus *= (sign(e) * sign(kk) > 0) ? 1 / r : r;
    turns -= it->second * t;
  }
  Rational ts = turns / k + Rational(rng.uniform(0, std::max<long>(0, abs(kk).get_si() - 1))) / k;
  v[s] = {modulus, frac(ts)};
  return exact_multipliers(v);
}

std::vector<NamedCurve> base_curves(Rng& rng) {
  std::vector<NamedCurve> out;
  out.push_back({"theta", theta(), true});
  out.push_back({"theta2", theta2(), true});
  out.push_back({"cycle4", cycle(4), false});
  for (int i = 0; i < 3; ++i) out.push_back({"random-theta", random_graph_curve_retry(rng, 2, theta_graph()), true});
  out.push_back({"random-theta-x2", scale_weights(random_graph_curve_retry(rng, 2, theta_graph(), 2), 2), true});
  for (int i = 0; i < 2; ++i) out.push_back({"random-k4", random_graph_curve_retry(rng, 4, k4_graph(), 2), true});
  out.push_back({"random-k4-x3", scale_weights(random_graph_curve_retry(rng, 4, k4_graph(), 2), 3), true});
  out.push_back({"random-prism", random_graph_curve_retry(rng, 6, prism_graph(), 2), true});
  out.push_back({"random-k33", random_graph_curve_retry(rng, 6, k33_graph(), 2), true});
  return out;
}

std::vector<NamedCurve> generated_curves(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  const auto base = base_curves(rng);
  std::vector<NamedCurve> out;
  for (std::size_t i = 0; i < count; ++i) {
    const NamedCurve& b = base[i % base.size()];
    const std::size_t marks = i < base.size() ? 0 : static_cast<std::size_t>(rng.uniform(0, 2));
    TropicalCurve c = marks ? random_subdivision(rng, b.curve, marks) : b.curve;
    if (i >= base.size()) c = random_relift(rng, c);
    out.push_back({b.name + "#" + std::to_string(i), c, b.trivalent && marks == 0});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

Vec2q random_offset(Rng& rng, const PeriodLattice& lat) {
  static const long primes[] = {1009, 1013, 1019, 1021, 1031};
  const long p = primes[rng.uniform(0, 4)];
  return lat.point({q(rng.uniform(1, p - 1), p), q(rng.uniform(1, p * p - 1), p * p)});
}

// Floors apply at the default size and above; smaller runs are smoke runs.
std::size_t floored(const Options& opt, std::size_t floor_value, std::size_t wanted) {
  return opt.cases >= Options{}.cases ? std::max(wanted, floor_value) : std::max<std::size_t>(1, wanted);
}
std::size_t min_count(const Options& opt, std::size_t floor_value) { return floored(opt, floor_value, opt.cases); }

}  // namespace

SuiteResult suite_sigma_agreement(const Options& opt) {
  Recorder rec("sigma two-way agreement");
  Rng rng(opt.seed ^ 0x51);
  for (const auto& nc : generated_curves(opt.seed, min_count(opt, 50))) {
    const MulValue sc = sigma_cocycle(nc.curve);
    int good = 0;
    for (int attempt = 0; attempt < 40 && good < 3; ++attempt) {
      const Vec2q off = attempt % 2 == 0 ? random_offset(rng, nc.curve.lattice())
                                         : retry_offset(nc.curve.lattice(), static_cast<std::size_t>(attempt / 2));
      MulValue sg;
      std::vector<Crossing> cross;
      TropicalCurve reduced;
      try {
        sg = sigma_geometric(nc.curve, off);
        reduced = reduce_to_domain(nc.curve, off);
        cross = crossings(reduced, off);
      } catch (const DegenerateOffsetError&) {
        continue;
      }
      ++good;
      rec.check(sg == sc, [&] {
        return nc.name + ": cocycle " + to_string(sc) + " vs geometric " + to_string(sg) + " at offset " + to_string(off) +
               "\n" + dump(nc.curve);
      });
      std::map<std::string, Vec2i> net;
      for (const auto& c : cross) {
        (c.side == Side::B1 ? net[c.edge].x : net[c.edge].y) += c.signed_count;
      }
      for (const auto& e : reduced.edges()) {
        rec.check(net[e.id] == -e.shift, [&] {
          return nc.name + ": net crossings of " + e.id + " are " + to_string(net[e.id]) + ", shift " + to_string(e.shift);
        });
      }
    }
    rec.check(good >= 3, [&] { return nc.name + ": fewer than three generic offsets found"; });
  }
  return rec.result;
}

SuiteResult suite_sigma_invariance(const Options& opt) {
  Recorder rec("sigma well-definedness");
  Rng rng(opt.seed ^ 0x52);
  for (const auto& nc : generated_curves(opt.seed + 1, min_count(opt, 30))) {
    const TropicalCurve& c = nc.curve;
    const MulValue s = sigma_cocycle(c);
    const TropicalCurve r = random_relift(rng, c);
    rec.check(sigma_cocycle(r) == s, [&] { return nc.name + ": sigma changed under relift"; });
    const TropicalCurve sub = random_subdivision(rng, c, 1);
    rec.check(sigma_cocycle(sub) == s, [&] { return nc.name + ": sigma changed under subdivision"; });
    rec.check(parity(sub) == parity(c), [&] { return nc.name + ": parity changed under subdivision"; });

    const MulValue g1 = sigma_geometric_auto(c).sigma;
    const MulValue g2 = sigma_geometric(c, random_offset(rng, c.lattice()));
    rec.check(g1 == g2, [&] { return nc.name + ": geometric sigma depends on the offset"; });

    for (int det : {1, -1}) {
      const Mat2i A = random_unimodular(rng, det);
      const TropicalCurve t = transform(c, A);
      const MulValue st = mv_substitute(sigma_cocycle(t), mode_for(t.lattice(), ModeKind::formal));
      rec.check(st == mv_pow(s, Rational(det)), [&] {
        return nc.name + ": transform with det " + std::to_string(det) + " gives sigma " + to_string(st) +
               ", expected power of " + to_string(s);
      });
      rec.check(parity(t) == parity(c), [&] { return nc.name + ": parity changed under transform"; });
      const auto v0 = realizability(c, mode_for(c.lattice(), ModeKind::formal)).verdict;
      const auto v1 = realizability(t, mode_for(t.lattice(), ModeKind::formal)).verdict;
      rec.check(v0 == v1, [&] { return nc.name + ": formal verdict changed under transform"; });

      for (bool tuned : {false, true}) {
        const TropicalCurve ce = with_multipliers(c, tuned ? tuned_exact(rng, c, true) : random_exact(rng));
        const TropicalCurve te = transform(ce, A);
        const auto r0 = realizability(ce, mode_for(ce.lattice(), ModeKind::exact));
        const auto r1 = realizability(te, mode_for(te.lattice(), ModeKind::exact));
        rec.check(r0.verdict == r1.verdict, [&] { return nc.name + ": exact verdict changed under transform"; });
        const MulValue e0 = mv_substitute(mv_pow(r0.sigma, Rational(det)), mode_for(ce.lattice(), ModeKind::exact));
        const MulValue e1 = mv_substitute(r1.sigma, mode_for(te.lattice(), ModeKind::exact));
        rec.check(e0 == e1, [&] { return nc.name + ": exact sigma value not transformed by det"; });
      }
    }
  }
  return rec.result;
}

SuiteResult suite_prelog_equivalence(const Options& opt) {
  Recorder rec("realizability = pre-log feasibility");
  Rng rng(opt.seed ^ 0x53);
  std::size_t exact_assignments = 0;
  for (const auto& nc : generated_curves(opt.seed + 2, min_count(opt, 30))) {
    const TropicalCurve& c = nc.curve;
    {
      const EqualityMode m = mode_for(c.lattice(), ModeKind::formal);
      const auto r = realizability(c, m).verdict;
      const auto p = solve_monomial(assemble_system(c), m).feasible;
      rec.check(r == p, [&] { return nc.name + ": formal verdict " + std::string(decision_name(r)) + " vs pre-log " +
                                     std::string(decision_name(p)); });
    }
    // Weighted product of all rows.
    {
      const MonomialSystem s = assemble_system(c);
      const Integer delta = curve_delta(c);
      std::vector<Integer> combo(s.unknowns.size(), 0);
      MulValue rhs;
      std::size_t row = 0;
      for (const auto& v : c.vertices()) {
        const Integer y = exact_div(vertex_gamma(c, v.id), delta);
        for (std::size_t j = 0; j < combo.size(); ++j) combo[j] += y * s.exponent_matrix(row, j);
        rhs *= mv_pow(s.rhs[row], Rational(y));
        ++row;
      }
      for (const auto& e : c.edges()) {
        const Integer y = -exact_div(edge_weight(e), delta);
        for (std::size_t j = 0; j < combo.size(); ++j) combo[j] += y * s.exponent_matrix(row, j);
        rhs *= mv_pow(s.rhs[row], Rational(y));
        ++row;
      }
      const bool zero = std::all_of(combo.begin(), combo.end(), [](const Integer& x) { return x == 0; });
      rec.check(zero && rhs == sign_target(parity(c)) / sigma_cocycle(c),
                [&] { return nc.name + ": weighted product of rows does not reproduce sigma"; });
    }
    for (int k = 0; k < 3; ++k) {
      const Multipliers m = k == 0 ? random_exact(rng) : tuned_exact(rng, c, k == 1);
      const TropicalCurve ce = with_multipliers(c, m);
      const EqualityMode mode = mode_for(ce.lattice(), ModeKind::exact);
      const auto r = realizability(ce, mode).verdict;
      const auto p = solve_monomial(assemble_system(ce), mode).feasible;
      ++exact_assignments;
      rec.check(r == p, [&] { return nc.name + ": exact verdict " + std::string(decision_name(r)) + " vs pre-log " +
                                     std::string(decision_name(p)) + "\n" + dump(ce); });
      if (k == 1) rec.check(r == Decision::yes, [&] { return nc.name + ": tuned multipliers not realizable"; });
      if (k == 2 && !sigma_cocycle(c).is_alpha_free()) {
        rec.check(r == Decision::no, [&] { return nc.name + ": anti-tuned multipliers realizable"; });
      }
    }
  }
  rec.check(exact_assignments >= floored(opt, 20, 1), [] { return std::string("fewer than 20 exact assignments"); });
  return rec.result;
}

SuiteResult suite_deformation_ranks(const Options& opt) {
  Recorder rec("deformation ranks and dual space");
  for (const auto& nc : generated_curves(opt.seed + 3, min_count(opt, 30))) {
    const TropicalCurve& c = nc.curve;
    if (nc.trivalent) {
      const auto r = deformation_ranks(c);
      const Integer g = genus(c);
      rec.check(r.rank_cokernel == 1 && Integer(static_cast<unsigned long>(r.rank_kernel)) == g, [&] {
        return nc.name + ": ranks (" + std::to_string(r.rank_kernel) + "," + std::to_string(r.rank_cokernel) +
               "), genus " + g.get_str();
      });
      rec.check(Integer(static_cast<unsigned long>(r.rank_kernel)) == g - 1 + static_cast<unsigned long>(r.rank_cokernel),
                [&] { return nc.name + ": rank identity fails"; });
    }
    const DualFlagSpace d = dual_flag_space(c);
    rec.check(d.dimension == 1, [&] { return nc.name + ": dual space dimension " + std::to_string(d.dimension); });
    if (d.dimension != 1) continue;
    std::optional<Rational> ratio;
    for (const auto& e : c.edges()) {
      const Vec2q ut = d.generator.at({e.tail, e.id});
      const Vec2q uh = d.generator.at({e.head, e.id});
      const Vec2q w = to_rational(e.weight_vector);
      rec.check(ut.x * w.x + ut.y * w.y == 0, [&] { return nc.name + ": u not orthogonal on " + e.id; });
      rec.check((ut + uh).is_zero(), [&] { return nc.name + ": u does not cancel along " + e.id; });
      const Rational lam = w.x != 0 ? Rational(ut.y / w.x) : Rational(-ut.x / w.y);
      rec.check(ut == lam * Vec2q{-w.y, w.x} && (!ratio || *ratio == lam),
                [&] { return nc.name + ": generator not proportional to the rotation on " + e.id; });
      ratio = lam;
    }
    for (std::size_t v = 0; v < c.vertices().size(); ++v) {
      Vec2q sum;
      for (std::size_t e : c.incident(v)) sum = sum + d.generator.at({c.vertices()[v].id, c.edges()[e].id});
      rec.check(sum.is_zero(), [&] { return nc.name + ": u not balanced at " + c.vertices()[v].id; });
    }
  }
  return rec.result;
}

SuiteResult suite_kernel_oracle(const Options& opt) {
  Recorder rec("kernel order oracle");
  Rng rng(opt.seed ^ 0x55);
  std::size_t instances = 0;
  auto compare = [&](const IntMatrix& D, const std::string& what) {
    const KernelOrder k = kernel_order_of(D);
    if (!k.order) return;
    const Integer b = kernel_order_bruteforce(D);
    ++instances;
    rec.check(b == *k.order, [&] { return what + ": Smith form " + k.order->get_str() + " vs enumeration " + b.get_str(); });
  };
  compare(build_deformation_matrices(theta(), theta_marks()).D_rows, "theta");
  compare(build_deformation_matrices(theta2(), theta_marks()).D_rows, "theta2");
  const std::size_t target = floored(opt, 30, opt.cases / 2);
  for (int attempt = 0; instances < target && attempt < 2000; ++attempt) {
    if (attempt % 2 == 0) {
      TropicalCurve c = random_graph_curve_retry(rng, 2, theta_graph(), 3);
      if (rng.coin()) c = scale_weights(c, rng.uniform(2, 3));
      if (rng.coin()) c = random_subdivision(rng, c, 1);
      const auto marks = random_marks(rng, c, 2);
      if (marks.size() != 2 || marks[0].edge == marks[1].edge) continue;
      const IntMatrix D = build_deformation_matrices(c, marks).D_rows;
      if (D.cols() > 12) continue;
      compare(D, "random theta\n" + dump(c));
    } else {
      const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
      const std::size_t r = n + static_cast<std::size_t>(rng.uniform(0, 2));
      IntMatrix D(r, n);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < n; ++j) D(i, j) = rng.uniform(-4, 4);
      }
      if (rank_rational(D) < n) continue;
      const KernelOrder k = kernel_order_of(D);
      double cost = 1;
      for (std::size_t j = 0; j < n; ++j) cost *= k.order->get_d();
      if (cost > 2e6) continue;
      std::ostringstream os;
      os << D;
      compare(D, "matrix " + os.str());
    }
  }
  rec.check(instances >= floored(opt, 30, 1), [&] { return "only " + std::to_string(instances) + " finite instances"; });
  return rec.result;
}

SuiteResult suite_count_invariance(const Options& opt) {
  Recorder rec("count invariance");
  Rng rng(opt.seed ^ 0x56);
  {
    const auto r = count_curves(theta(unit_multipliers()), theta_marks(), mode_for(theta(unit_multipliers()).lattice(), ModeKind::exact));
    const Integer oracle = kernel_order_bruteforce(theta(), theta_marks());
    rec.check(r.total && *r.total == oracle * 1 && *r.total == 1, [&] { return std::string("theta golden total"); });
    const TropicalCurve t2 = theta2(unit_multipliers());
    const auto r2 = count_curves(t2, theta_marks(), mode_for(t2.lattice(), ModeKind::exact));
    const Integer oracle2 = kernel_order_bruteforce(t2, theta_marks());
    rec.check(r2.total && *r2.total == oracle2 * 8 && *r2.total == 8, [&] { return std::string("theta2 golden total"); });
  }
  std::size_t done = 0;
  for (int attempt = 0; done < floored(opt, 20, opt.cases / 3) && attempt < 500; ++attempt) {
    const auto base = base_curves(rng);
    const NamedCurve& nc = base[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(base.size()) - 1))];
    if (!nc.trivalent) continue;
    const TropicalCurve c = with_multipliers(nc.curve, tuned_exact(rng, nc.curve, true));
    const auto g = static_cast<std::size_t>(genus(c).get_ui());
    const auto marks = random_marks(rng, c, g);
    std::set<std::string> marked_edges;
    for (const auto& p : marks) marked_edges.insert(p.edge);
    if (marks.size() != g || marked_edges.size() != g || !rigidity_check(c, marks)) continue;
    const auto base_report = count_curves(c, marks, mode_for(c.lattice(), ModeKind::exact));
    ++done;
    std::string free_edge;
    for (const auto& e : c.edges()) {
      if (!marked_edges.count(e.id)) {
        free_edge = e.id;
        break;
      }
    }
    if (!free_edge.empty()) {
      const TropicalCurve s = subdivide(c, {{free_edge, q(rng.uniform(1, 4), 5)}}).curve;
      const auto r = count_curves(s, marks, mode_for(s.lattice(), ModeKind::exact));
      rec.check(r.total == base_report.total, [&] { return nc.name + ": count changed under subdivision\n" + dump(c); });
    }
    const Mat2i A = random_unimodular(rng, rng.coin() ? 1 : -1);
    const TropicalCurve t = transform(c, A);
    const auto r = count_curves(t, marks, mode_for(t.lattice(), ModeKind::exact));
    rec.check(r.total == base_report.total, [&] { return nc.name + ": count changed under transform\n" + dump(c); });
  }
  rec.check(done >= floored(opt, 10, 1), [&] { return "only " + std::to_string(done) + " rigid instances"; });
  return rec.result;
}

SuiteResult suite_vertex_round_trip(const Options& opt) {
  Recorder rec("vertex parameter round trip");
  Rng rng(opt.seed ^ 0x57);
  std::size_t done = 0;
  const std::size_t target = floored(opt, 30, opt.cases / 2);
  for (int attempt = 0; done < target && attempt < 5000; ++attempt) {
    const Vec2i v0 = vi(rng.uniform(-8, 8), rng.uniform(-8, 8));
    const Vec2i v1 = vi(rng.uniform(-8, 8), rng.uniform(-8, 8));
    const Vec2i v2 = -(v0 + v1);
    if (v0.is_zero() || v1.is_zero() || v2.is_zero() || det2(v0, v1) == 0) continue;
    if (multiplicity(v0) > 8 || multiplicity(v1) > 8 || multiplicity(v2) > 8) continue;
    const std::array<Vec2i, 3> v{v0, v1, v2};
    const Integer w1 = multiplicity(v0), w2 = multiplicity(v1), w3 = multiplicity(v2);
    const Integer gamma = gcd(gcd(w1, w2), w3);
    const Integer wv = abs(det2(v0, v1));
    auto random_value = [&] {
      return MulValue::scalar(small_positive(rng)) * MulValue::phase(random_turns(rng));
    };
    const MulValue nu1 = random_value();
    const MulValue nu2 = random_value();
    const MulValue rest = (mod_floor(wv / gamma, 2) == 0 ? MulValue() : MulValue::minus_one()) /
                          (mv_pow(nu1, Rational(w1 / gamma)) * mv_pow(nu2, Rational(w2 / gamma)));
    const Integer w3p = w3 / gamma;
    const MulValue nu3 = mv_root(rest, w3p) * MulValue::phase(make_rational(rng.uniform(0, w3p.get_si() - 1), w3p));
    ++done;
    try {
      const VertexModel vm = betas_from_mus(v, nu1, nu2, nu3);
      const auto mu = boundary_values(v, vm.beta1, vm.beta2);
      rec.check(mu[0] == nu1 && mu[1] == nu2 && mu[2] == nu3, [&] { return "boundary values do not match for " +
                                                                         to_string(v0) + " " + to_string(v1); });
      const Integer D = det2(v0, v1);
      rec.check(mod_floor(vm.l * w1 - vm.m * w2 + sign(D) * vm.n * gamma, w3) == 0,
                [&] { return "root congruence fails for " + to_string(v0) + " " + to_string(v1); });
      const MulValue zeta_check = mv_pow(vm.zeta1 / vm.zeta2, Rational(exact_div(D, w3))) * vm.zeta3;
      rec.check(zeta_check.is_identity(), [&] { return "zeta relation fails for " + to_string(v0) + " " + to_string(v1); });
      const MulValue forward = mv_pow(mu[0], Rational(w1 / gamma)) * mv_pow(mu[1], Rational(w2 / gamma)) *
                               mv_pow(mu[2], Rational(w3 / gamma));
      rec.check(forward == (mod_floor(wv / gamma, 2) == 0 ? MulValue() : MulValue::minus_one()),
                [&] { return "forward relation fails for " + to_string(v0) + " " + to_string(v1); });
    } catch (const Error& e) {
      rec.fail(std::string("betas_from_mus threw: ") + e.what() + " for " + to_string(v0) + " " + to_string(v1));
    }
    if (done % 3 == 0) {
      const std::map<Alpha, std::complex<double>> none;
      const auto c1 = mv_eval_numeric(nu1, none), c2 = mv_eval_numeric(nu2, none), c3 = mv_eval_numeric(nu3, none);
      const NumericVertexModel nm = betas_from_mus_numeric(v, c1, c2, c3, 1e-9);
      const auto mu = boundary_values_numeric(v, nm.beta1, nm.beta2);
      const double res = std::max({std::abs(mu[0] / c1 - 1.0), std::abs(mu[1] / c2 - 1.0), std::abs(mu[2] / c3 - 1.0)});
      rec.check(res <= 1e-9, [&] { return "numeric residual " + std::to_string(res) + " for " + to_string(v0) + " " + to_string(v1); });
    }
  }
  rec.check(done >= floored(opt, 30, 1), [&] { return "only " + std::to_string(done) + " triples"; });
  return rec.result;
}

SuiteResult suite_solver_soundness(const Options& opt) {
  Recorder rec("solver soundness");
  Rng rng(opt.seed ^ 0x58);
  for (const auto& nc : generated_curves(opt.seed + 4, min_count(opt, 30))) {
    for (int k = 0; k < 3; ++k) {
      const TropicalCurve c =
          k == 0 ? nc.curve : with_multipliers(nc.curve, k == 1 ? tuned_exact(rng, nc.curve, true) : random_exact(rng));
      const EqualityMode mode = mode_for(c.lattice(), k == 0 ? ModeKind::formal : ModeKind::exact);
      const MonomialSystem s = assemble_system(c);
      const SolveResult r = solve_monomial(s, mode);
      const RealizabilityReport rep = realizability(c, mode);
      if (r.feasible == Decision::yes) {
        const VerifyReport v = verify_assignment(c, to_assignment(s, r), mode);
        rec.check(v.pass, [&] { return nc.name + ": solver output fails verification"; });
        continue;
      }
      rec.check(!r.witnesses.empty(), [&] { return nc.name + ": infeasible without witness"; });
      const MulValue expected = mv_substitute(rep.sigma / rep.target, mode);
      for (const auto& w : r.witnesses) {
        rec.check(!w.value.is_identity() && (w.value == expected || w.value == expected.inverse()), [&] {
          return nc.name + ": witness " + to_string(w.value) + " vs sigma ratio " + to_string(expected);
        });
      }
      rec.check(rep.verdict == Decision::no, [&] { return nc.name + ": witness for a realizable curve"; });
    }
  }
  return rec.result;
}

namespace {

bool unimodular(const IntMatrix& U) { return abs(determinant(U)) == 1; }

/// gcd of all k x k minors; zero when there are none or all vanish.
std::optional<Integer> minor_gcd(const IntMatrix& A, std::size_t k) {
  const std::size_t m = A.rows(), n = A.cols();
  auto choose = [](std::size_t a, std::size_t b) {
    double r = 1;
    for (std::size_t i = 0; i < b; ++i) r = r * static_cast<double>(a - i) / static_cast<double>(i + 1);
    return r;
  };
  if (k == 0 || k > std::min(m, n) || choose(m, k) * choose(n, k) > 3000) return std::nullopt;
  std::vector<std::size_t> rs(k), cs(k);
  Integer g = 0;
  std::iota(rs.begin(), rs.end(), 0);
  auto next = [](std::vector<std::size_t>& v, std::size_t limit) {
    std::size_t i = v.size();
    while (i > 0 && v[i - 1] == limit - v.size() + i - 1) --i;
    if (i == 0) return false;
    ++v[i - 1];
    for (std::size_t j = i; j < v.size(); ++j) v[j] = v[j - 1] + 1;
    return true;
  };
  do {
    std::iota(cs.begin(), cs.end(), 0);
    do {
      IntMatrix M(k, k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) M(i, j) = A(rs[i], cs[j]);
      }
      g = gcd(g, determinant(M));
    } while (next(cs, n));
  } while (next(rs, m));
  return g;
}

}  // namespace

SuiteResult suite_exactmath(const Options& opt) {
  Recorder rec("exact lattice normal forms");
  Rng rng(opt.seed ^ 0x59);
  const std::size_t count = floored(opt, 100, opt.cases * 2);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 12));
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 12));
    IntMatrix A(m, n);
    const bool sparse = rng.coin();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) A(i, j) = sparse && rng.uniform(0, 2) != 0 ? 0 : rng.uniform(-20, 20);
    }
    std::ostringstream os;
    os << A;
    const std::string name = os.str();
    const SnfResult s = snf(A);
    rec.check(s.U * A * s.V == s.S, [&] { return "U A V != S for\n" + name; });
    rec.check(unimodular(s.U) && unimodular(s.V), [&] { return "Smith transforms not unimodular for\n" + name; });
    const auto d = s.diagonal();
    bool shape = true;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && s.S(i, j) != 0) shape = false;
      }
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] < 0) shape = false;
      if (i + 1 < d.size() && d[i] == 0 && d[i + 1] != 0) shape = false;
      if (i + 1 < d.size() && d[i] != 0 && d[i + 1] % d[i] != 0) shape = false;
    }
    rec.check(shape, [&] { return "Smith form shape wrong for\n" + name; });
    rec.check(s.rank() == rank_rational(A), [&] { return "rank mismatch for\n" + name; });

    const HnfResult h = hnf(A);
    rec.check(h.U * A == h.H && unimodular(h.U), [&] { return "U A != H for\n" + name; });
    bool echelon = true;
    long last = -1;
    for (std::size_t i = 0; i < m; ++i) {
      long p = -1;
      for (std::size_t j = 0; j < n; ++j) {
        if (h.H(i, j) != 0) {
          p = static_cast<long>(j);
          break;
        }
      }
      if (p < 0) {
        last = static_cast<long>(n);
        continue;
      }
      if (p <= last || h.H(i, static_cast<std::size_t>(p)) <= 0) echelon = false;
      for (std::size_t r = 0; r < i; ++r) {
        const Integer& x = h.H(r, static_cast<std::size_t>(p));
        if (x < 0 || x >= h.H(i, static_cast<std::size_t>(p))) echelon = false;
      }
      last = p;
    }
    rec.check(echelon, [&] { return "Hermite form shape wrong for\n" + name; });

    Integer prefix = 1;
    for (std::size_t k = 1; k <= std::min(m, n); ++k) {
      prefix *= d[k - 1];
      const auto g = minor_gcd(A, k);
      if (!g) continue;
      rec.check(*g == prefix, [&] { return "determinantal divisor " + std::to_string(k) + " mismatch for\n" + name; });
    }
  }
  return rec.result;
}

std::vector<SuiteResult> run_all(const Options& opt) {
  std::vector<SuiteResult> out;
  using Suite = SuiteResult (*)(const Options&);
  const std::pair<const char*, Suite> suites[] = {
      {"sigma two-way agreement", suite_sigma_agreement},
      {"sigma well-definedness", suite_sigma_invariance},
      {"realizability = pre-log feasibility", suite_prelog_equivalence},
      {"deformation ranks and dual space", suite_deformation_ranks},
      {"kernel order oracle", suite_kernel_oracle},
      {"count invariance", suite_count_invariance},
      {"vertex parameter round trip", suite_vertex_round_trip},
      {"solver soundness", suite_solver_soundness},
      {"exact lattice normal forms", suite_exactmath}};
  for (const auto& [name, s] : suites) {
    try {
      out.push_back(s(opt));
    } catch (const std::exception& e) {
      SuiteResult r;
      r.name = name;
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace tropreal::selftest
