#include "tropreal/moduli.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>

namespace tropreal {

namespace {

void put(std::vector<Integer>& row, std::size_t vertex, const Vec2i& c, int sign) {
  row[2 * vertex] += sign * c.x;
  row[2 * vertex + 1] += sign * c.y;
}

std::vector<std::vector<Integer>> f_rows(const TropicalCurve& curve) {
  std::vector<std::vector<Integer>> rows;
  const std::size_t n = 2 * curve.vertices().size();
  for (const auto& e : curve.edges()) {
    std::vector<Integer> row(n, 0);
    const Vec2i normal = primitive_normal(e.weight_vector);
    put(row, curve.vertex_index(e.head), normal, 1);
    put(row, curve.vertex_index(e.tail), normal, -1);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Integer> slide_row(const TropicalCurve& curve, std::size_t v) {
  std::vector<Integer> row(2 * curve.vertices().size(), 0);
  const std::size_t e = curve.incident(v).front();
  put(row, v, slide_covector(primitive(curve.outgoing(v, e))), 1);
  return row;
}

}  // namespace

IntMatrix build_F(const TropicalCurve& curve) {
  return IntMatrix::from_rows(f_rows(curve), 2 * curve.vertices().size());
}

DeformationRanks deformation_ranks(const TropicalCurve& curve) {
  const std::size_t r = rank_rational(build_F(curve));
  return {2 * curve.vertices().size() - r, curve.edges().size() - r};
}

DualFlagSpace dual_flag_space(const TropicalCurve& curve) {
  const std::vector<Flag> flags = curve.flags();
  const std::size_t n = flags.size();
  std::vector<Vec2i> normal(n);
  for (std::size_t e = 0; e < curve.edges().size(); ++e) {
    normal[2 * e] = primitive_normal(curve.edges()[e].weight_vector);
    normal[2 * e + 1] = primitive_normal(-curve.edges()[e].weight_vector);
  }
  std::vector<std::vector<Integer>> rows;
  for (std::size_t e = 0; e < curve.edges().size(); ++e) {
    for (int k = 0; k < 2; ++k) {
      std::vector<Integer> row(n, 0);
      row[2 * e] = k == 0 ? normal[2 * e].x : normal[2 * e].y;
      row[2 * e + 1] = k == 0 ? normal[2 * e + 1].x : normal[2 * e + 1].y;
      rows.push_back(std::move(row));
    }
  }
  for (std::size_t v = 0; v < curve.vertices().size(); ++v) {
    const std::string& id = curve.vertices()[v].id;
    for (int k = 0; k < 2; ++k) {
      std::vector<Integer> row(n, 0);
      for (std::size_t e : curve.incident(v)) {
        const std::size_t f = curve.edges()[e].tail == id ? 2 * e : 2 * e + 1;
        row[f] = k == 0 ? normal[f].x : normal[f].y;
      }
      rows.push_back(std::move(row));
    }
  }
  const auto basis = nullspace_rational(IntMatrix::from_rows(rows, n));
  DualFlagSpace out;
  out.dimension = basis.size();
  if (basis.empty()) return out;
  std::vector<Rational> c = basis.front();
  const auto lead = std::find_if(c.begin(), c.end(), [](const Rational& x) { return x != 0; });
  const Rational scale = *lead;
  for (auto& x : c) x /= scale;
  for (std::size_t f = 0; f < n; ++f) out.generator[flags[f]] = c[f] * to_rational(normal[f]);
  return out;
}

Vec2i slide_covector(const Vec2i& direction) {
  const ExtGcd g = ext_gcd(direction.x, direction.y);
  if (g.g != 1) throw DomainError("slide covector needs a primitive direction, got " + to_string(direction));
  return {g.x, g.y};
}

bool rigidity_check(const TropicalCurve& curve, const std::vector<MarkedPoint>& marked) {
  auto rows = f_rows(curve);
  for (std::size_t v = 0; v < curve.vertices().size(); ++v) {
    if (curve.valence(v) == 2) rows.push_back(slide_row(curve, v));
  }
  const std::size_t n = 2 * curve.vertices().size();
  const auto kernel = nullspace_rational(IntMatrix::from_rows(rows, n));
  if (kernel.empty()) return true;
  std::vector<std::vector<Rational>> eval;
  for (const auto& p : marked) {
    const TropicalEdge& e = curve.edge(p.edge);
    const std::size_t t = curve.vertex_index(e.tail);
    const Vec2i normal = primitive_normal(e.weight_vector);
    std::vector<Rational> row;
    for (const auto& k : kernel) row.push_back(normal.x * k[2 * t] + normal.y * k[2 * t + 1]);
    eval.push_back(std::move(row));
  }
  return rank_rational(eval) == kernel.size();
}

DeformationMatrices build_deformation_matrices(const TropicalCurve& curve, const std::vector<MarkedPoint>& marked) {
  DeformationMatrices out;
  out.F_rows = build_F(curve);
  out.subdivision = subdivide(curve, marked);
  const TropicalCurve& sub = out.subdivision.curve;
  const std::size_t n = 2 * sub.vertices().size();
  auto rows = f_rows(sub);
  const std::set<std::string> marks(out.subdivision.new_vertex_ids.begin(), out.subdivision.new_vertex_ids.end());
  for (const auto& id : out.subdivision.new_vertex_ids) {
    const std::size_t v = sub.vertex_index(id);
    for (std::size_t k = 0; k < 2; ++k) {
      std::vector<Integer> row(n, 0);
      row[2 * v + k] = 1;
      rows.push_back(std::move(row));
    }
  }
  for (std::size_t v = 0; v < sub.vertices().size(); ++v) {
    if (sub.valence(v) == 2 && !marks.count(sub.vertices()[v].id)) rows.push_back(slide_row(sub, v));
  }
  out.D_rows = IntMatrix::from_rows(rows, n);
  return out;
}

KernelOrder kernel_order_of(const IntMatrix& D) {
  const SnfResult s = snf(D);
  KernelOrder out;
  out.elementary_divisors = s.diagonal();
  out.elementary_divisors.resize(D.cols(), 0);
  if (s.rank() < D.cols()) return out;
  Integer prod = 1;
  for (const auto& d : out.elementary_divisors) prod *= d;
  out.order = prod;
  return out;
}

KernelOrder kernel_order_GCstar(const TropicalCurve& curve, const std::vector<MarkedPoint>& marked) {
  return kernel_order_of(build_deformation_matrices(curve, marked).D_rows);
}

namespace {

Integer smallest_maximal_minor(const IntMatrix& D) {
  const std::size_t r = D.rows();
  const std::size_t n = D.cols();
  std::vector<std::size_t> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  Integer best = 0;
  while (true) {
    IntMatrix M(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) M(i, j) = D(pick[i], j);
    }
    const Integer d = abs(determinant(M));
    if (d != 0 && (best == 0 || d < best)) best = d;
    if (best == 1) return best;
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == r - n + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

struct Enumerator {
  std::vector<std::vector<std::int64_t>> rows;
  /// rows whose last variable (in search order) is at this level
  std::vector<std::vector<std::size_t>> due;
  std::vector<std::size_t> order;
  std::vector<std::int64_t> value;
  std::int64_t L = 1;
  std::uint64_t count = 0;

  void run(std::size_t level) {
    if (level == order.size()) {
      ++count;
      return;
    }
    const std::size_t var = order[level];
    for (std::int64_t y = 0; y < L; ++y) {
      value[var] = y;
      bool ok = true;
      for (std::size_t r : due[level]) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < value.size(); ++j) acc = (acc + rows[r][j] * value[j]) % L;
        if (acc != 0) {
          ok = false;
          break;
        }
      }
      if (ok) run(level + 1);
    }
    value[var] = 0;
  }
};

}  // namespace

Integer kernel_order_bruteforce(const IntMatrix& D) {
  const std::size_t n = D.cols();
  if (rank_rational(D) < n) throw DomainError("brute-force kernel count needs full column rank");
  const Integer L = smallest_maximal_minor(D);
  if (L == 1) return 1;
  if (!L.fits_slong_p() || L > 1000000) throw DomainError("brute-force kernel count: modulus " + L.get_str() + " too large");

  Enumerator en;
  en.L = L.get_si();
  std::vector<std::size_t> row_order(D.rows());
  std::iota(row_order.begin(), row_order.end(), 0);
  auto support = [&D](std::size_t r) {
    std::size_t s = 0;
    for (std::size_t j = 0; j < D.cols(); ++j) s += D(r, j) != 0;
    return s;
  };
  std::stable_sort(row_order.begin(), row_order.end(),
                   [&](std::size_t a, std::size_t b) { return support(a) < support(b); });
  std::vector<std::size_t> position(n, n);
  for (std::size_t r : row_order) {
    for (std::size_t j = 0; j < n; ++j) {
      if (D(r, j) != 0 && position[j] == n) {
        position[j] = en.order.size();
        en.order.push_back(j);
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (position[j] == n) {
      position[j] = en.order.size();
      en.order.push_back(j);
    }
  }
  en.due.assign(n, {});
  for (std::size_t r = 0; r < D.rows(); ++r) {
    std::vector<std::int64_t> row(n);
    std::size_t last = 0;
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = mod_floor(D(r, j), L).get_si();
      if (row[j] != 0) {
        last = std::max(last, position[j]);
        any = true;
      }
    }
    if (!any) continue;
    en.due[last].push_back(en.rows.size());
    en.rows.push_back(std::move(row));
  }
  en.value.assign(n, 0);
  en.run(0);
  return Integer(static_cast<unsigned long>(en.count));
}

Integer kernel_order_bruteforce(const TropicalCurve& curve, const std::vector<MarkedPoint>& marked) {
  return kernel_order_bruteforce(build_deformation_matrices(curve, marked).D_rows);
}

Integer chain_weight_product(const TropicalCurve& curve) {
  const std::size_t E = curve.edges().size();
  std::vector<std::size_t> root(E);
  std::iota(root.begin(), root.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return root[x] == x ? x : root[x] = find(root[x]); };
  for (std::size_t v = 0; v < curve.vertices().size(); ++v) {
    const auto& inc = curve.incident(v);
    if (inc.size() == 2) root[find(inc[0])] = find(inc[1]);
  }
  Integer prod = 1;
  for (std::size_t e = 0; e < E; ++e) {
    if (find(e) == e) prod *= edge_weight(curve.edges()[e]);
  }
  return prod;
}

CountReport count_curves(const TropicalCurve& curve, const std::vector<MarkedPoint>& marked, const EqualityMode& mode) {
  require_valid(curve);
  CountReport out;
  out.realizability = realizability(curve, mode);
  if (out.realizability.verdict != Decision::yes) throw NotRealizable(out.realizability);
  const Integer g = genus(curve);
  if (Integer(static_cast<unsigned long>(marked.size())) != g) {
    throw ConstraintError("a curve of genus " + g.get_str() + " passing through " + g.get_str() + " points needs " +
                          g.get_str() + " marked points; got " + std::to_string(marked.size()));
  }
  if (!rigidity_check(curve, marked)) throw ConstraintError("marked points do not make the curve rigid");
  const KernelOrder k = kernel_order_GCstar(curve, marked);
  out.kernel_order = k.order;
  out.elementary_divisors = k.elementary_divisors;
  out.edge_weight_product = chain_weight_product(curve);
  if (k.order) out.total = *k.order * out.edge_weight_product;
  return out;
}

}  // namespace tropreal
