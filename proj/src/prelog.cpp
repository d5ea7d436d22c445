#include "tropreal/prelog.hpp"

#include <cmath>
#include <numbers>

#include "tropreal/errors.hpp"
#include "tropreal/realize.hpp"

namespace tropreal {

namespace {

MulValue prepare(const MulValue& v, const EqualityMode& mode) {
  return mode.kind == ModeKind::numeric ? v : mv_substitute(v, mode);
}

/// Mode used to test already-substituted values.
EqualityMode checker(const EqualityMode& mode) {
  return mode.kind == ModeKind::numeric ? mode : EqualityMode::formal();
}

MulValue sign_power(const Integer& k) { return mod_floor(k, 2) == 0 ? MulValue() : MulValue::minus_one(); }

Decision combine(Decision a, Decision b) {
  if (a == Decision::no || b == Decision::no) return Decision::no;
  if (a == Decision::undecided || b == Decision::undecided) return Decision::undecided;
  return Decision::yes;
}

}  // namespace

FlagCharacter flag_character(const std::vector<Vec2i>& outgoing, std::size_t index) {
  if (index >= outgoing.size()) throw DomainError("flag index out of range");
  FlagCharacter out;
  out.normal = primitive_normal(outgoing[index]);
  if (outgoing.size() == 3) {
    const Integer D = det2(outgoing[0], outgoing[1]);
    out.pullback_exponent = exact_div(D, multiplicity(outgoing[index]));
    const Vec2i& n = out.normal;
    out.pullback_monomial = Vec2i{Integer(outgoing[0].x * n.x + outgoing[0].y * n.y),
                                  Integer(outgoing[1].x * n.x + outgoing[1].y * n.y)};
  }
  return out;
}

FlagCharacter flag_character(const TropicalCurve& curve, const std::string& vertex, const std::string& edge) {
  const std::size_t v = curve.vertex_index(vertex);
  const std::size_t e = curve.edge_index(edge);
  std::vector<Vec2i> outgoing;
  std::size_t index = 0;
  bool found = false;
  for (std::size_t f : curve.incident(v)) {
    if (f == e) {
      index = outgoing.size();
      found = true;
    }
    outgoing.push_back(curve.outgoing(v, f));
  }
  if (!found) throw DomainError("'" + vertex + "' is not an endpoint of '" + edge + "'");
  return flag_character(outgoing, index);
}

Relation vertex_relation(const TropicalCurve& curve, const std::string& vertex) {
  const std::size_t v = curve.vertex_index(vertex);
  const auto& inc = curve.incident(v);
  Relation r;
  if (inc.size() == 2) {
    for (std::size_t e : inc) r.exponents[{vertex, curve.edges()[e].id}] = 1;
    return r;
  }
  if (inc.size() != 3) {
    throw DomainError("vertex '" + vertex + "' has valence " + std::to_string(inc.size()) + "; relations need 2 or 3");
  }
  const Integer gamma = vertex_gamma(curve, vertex);
  for (std::size_t e : inc) r.exponents[{vertex, curve.edges()[e].id}] = exact_div(edge_weight(curve.edges()[e]), gamma);
  r.rhs = sign_power(exact_div(vertex_weight(curve, vertex), gamma));
  return r;
}

Relation edge_relation(const TropicalCurve& curve, const std::string& edge) {
  const TropicalEdge& e = curve.edge(edge);
  Relation r;
  r.exponents[{e.tail, e.id}] = 1;
  r.exponents[{e.head, e.id}] = 1;
  const Vec2i pq = primitive(e.weight_vector);
  r.rhs = mv_pow(chi1(pq), Rational(-e.shift.x)) * mv_pow(chi2(pq), Rational(-e.shift.y));
  return r;
}

MonomialSystem assemble_system(const TropicalCurve& curve) {
  MonomialSystem s;
  s.unknowns = curve.flags();
  for (std::size_t i = 0; i < s.unknowns.size(); ++i) s.unknown_index[s.unknowns[i]] = i;
  std::vector<std::vector<Integer>> rows;
  auto add = [&](const Relation& r, std::string label) {
    std::vector<Integer> row(s.unknowns.size(), 0);
    for (const auto& [flag, k] : r.exponents) row[s.unknown_index.at(flag)] = k;
    rows.push_back(std::move(row));
    s.rhs.push_back(r.rhs);
    s.row_labels.push_back(std::move(label));
  };
  for (const auto& v : curve.vertices()) add(vertex_relation(curve, v.id), "vertex " + v.id);
  for (const auto& e : curve.edges()) add(edge_relation(curve, e.id), "edge " + e.id);
  s.exponent_matrix = IntMatrix::from_rows(rows, s.unknowns.size());
  return s;
}

SolveResult solve_system(const IntMatrix& A, const std::vector<MulValue>& b, const EqualityMode& mode) {
  if (b.size() != A.rows()) throw DomainError("right-hand side length does not match the system");
  std::vector<MulValue> rhs;
  rhs.reserve(b.size());
  for (const auto& x : b) rhs.push_back(prepare(x, mode));
  const EqualityMode check = checker(mode);

  const SnfResult s = snf(A);
  const std::size_t rank = s.rank();
  const auto diag = s.diagonal();
  SolveResult out;
  out.feasible = Decision::yes;

  std::vector<MulValue> y(A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    MulValue bi;
    for (std::size_t j = 0; j < A.rows(); ++j) {
      if (s.U(i, j) != 0) bi *= mv_pow(rhs[j], Rational(s.U(i, j)));
    }
    if (i < rank) {
      y[i] = mv_root(bi, diag[i]);
      continue;
    }
    const OneTest t = mv_is_one(bi, check);
    if (t.verdict != Decision::yes) out.witnesses.push_back({i, bi, t});
    out.feasible = combine(out.feasible, t.verdict);
  }

  for (std::size_t j = 0; j < A.cols(); ++j) {
    if (j >= rank || diag[j] > 1) {
      out.kernel.push_back({s.V.col(j), j >= rank ? Integer(0) : diag[j]});
    }
  }
  if (out.feasible == Decision::no) return out;

  out.solution.assign(A.cols(), MulValue());
  for (std::size_t k = 0; k < A.cols(); ++k) {
    for (std::size_t j = 0; j < rank; ++j) {
      if (s.V(k, j) != 0) out.solution[k] *= mv_pow(y[j], Rational(s.V(k, j)));
    }
  }
  for (std::size_t i = 0; i < A.rows(); ++i) {
    MulValue lhs;
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (A(i, j) != 0) lhs *= mv_pow(out.solution[j], Rational(A(i, j)));
    }
    const OneTest t = mv_is_one(lhs / rhs[i], check);
    if (t.verdict == Decision::no) throw Error("monomial solver produced an assignment failing row " + std::to_string(i));
    out.feasible = combine(out.feasible, t.verdict);
  }
  return out;
}

SolveResult solve_monomial(const MonomialSystem& system, const EqualityMode& mode) {
  return solve_system(system.exponent_matrix, system.rhs, mode);
}

FlagAssignment to_assignment(const MonomialSystem& system, const SolveResult& result) {
  FlagAssignment a;
  for (std::size_t i = 0; i < result.solution.size(); ++i) a.values[system.unknowns[i]] = result.solution[i];
  return a;
}

bool prelog_exists(const TropicalCurve& curve, const EqualityMode& mode) {
  return solve_monomial(assemble_system(curve), mode).feasible == Decision::yes;
}

VerifyReport verify_assignment(const TropicalCurve& curve, const FlagAssignment& assignment, const EqualityMode& mode) {
  const MonomialSystem s = assemble_system(curve);
  const EqualityMode check = checker(mode);
  VerifyReport out;
  out.pass = true;
  for (std::size_t i = 0; i < s.rhs.size(); ++i) {
    MulValue lhs;
    for (std::size_t j = 0; j < s.unknowns.size(); ++j) {
      const Integer& k = s.exponent_matrix(i, j);
      if (k == 0) continue;
      const auto it = assignment.values.find(s.unknowns[j]);
      if (it == assignment.values.end()) {
        throw ConfigError("assignment has no value for flag (" + s.unknowns[j].vertex + ", " + s.unknowns[j].edge + ")");
      }
      lhs *= mv_pow(it->second, Rational(k));
    }
    RowCheck row;
    row.label = s.row_labels[i];
    row.residual = lhs / prepare(s.rhs[i], mode);
    row.test = mv_is_one(row.residual, check);
    out.pass = out.pass && row.test.verdict == Decision::yes;
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::pair<Integer, Integer> solve_root_congruence(const Integer& w1, const Integer& w2, const Integer& w3,
                                                  const Integer& gamma, int sign, const Integer& n) {
  if (w3 == 0) throw DomainError("congruence modulus w3 must be nonzero");
  const Integer mod = abs(w3);
  const Integer r = -sign * n * gamma;
  const Integer g1 = gcd(w1, mod);
  const Integer l_mod = mod / g1;
  const Integer m_limit = mod / gcd(w2, mod);
  for (Integer m = 0; m < m_limit; ++m) {
    const Integer rhs = r + m * w2;
    if (mod_floor(rhs, g1) != 0) continue;
    const Integer a = mod_floor(Integer(w1 / g1), l_mod);
    const ExtGcd inv = ext_gcd(a, l_mod);
    const Integer l = mod_floor(Integer((rhs / g1) * inv.x), l_mod);
    return {l, m};
  }
  throw DomainError("congruence l*w1 - m*w2 = " + r.get_str() + " mod " + mod.get_str() + " has no solution");
}

std::array<MulValue, 3> boundary_values(const std::array<Vec2i, 3>& v, const MulValue& beta1, const MulValue& beta2) {
  const Integer D = det2(v[0], v[1]);
  return {mv_pow(beta2, Rational(exact_div(-D, multiplicity(v[0])))),
          mv_pow(beta1, Rational(exact_div(D, multiplicity(v[1])))),
          mv_pow(MulValue::minus_one() * beta2 / beta1, Rational(exact_div(D, multiplicity(v[2]))))};
}

VertexModel betas_from_mus(const std::array<Vec2i, 3>& v, const MulValue& nu1_in, const MulValue& nu2_in,
                           const MulValue& nu3_in, const EqualityMode& mode) {
  if (mode.kind == ModeKind::numeric) throw ConfigError("use betas_from_mus_numeric for numeric values");
  if (!(v[0] + v[1] + v[2]).is_zero()) throw DomainError("outgoing vectors are not balanced");
  const MulValue nu1 = prepare(nu1_in, mode);
  const MulValue nu2 = prepare(nu2_in, mode);
  const MulValue nu3 = prepare(nu3_in, mode);
  const Integer w1 = multiplicity(v[0]);
  const Integer w2 = multiplicity(v[1]);
  const Integer w3 = multiplicity(v[2]);
  const Integer gamma = gcd(gcd(w1, w2), w3);
  const Integer D = det2(v[0], v[1]);
  if (D == 0) throw DomainError("outgoing vectors are parallel");
  const Integer wv = abs(D);

  const MulValue relation = mv_pow(nu1, Rational(w1 / gamma)) * mv_pow(nu2, Rational(w2 / gamma)) *
                            mv_pow(nu3, Rational(w3 / gamma)) / sign_power(wv / gamma);
  if (!relation.is_identity()) {
    throw DomainError("product relation fails at the vertex; residual " + to_string(relation));
  }

  VertexModel out;
  out.L = IntMatrix(2, 2);
  out.L(0, 0) = v[0].x;
  out.L(1, 0) = v[0].y;
  out.L(0, 1) = v[1].x;
  out.L(1, 1) = v[1].y;
  MulValue beta2 = mv_pow(nu1, make_rational(1, exact_div(-D, w1)));
  MulValue beta1 = mv_pow(nu2, make_rational(1, exact_div(D, w2)));
  out.zeta3 = mv_pow(MulValue::minus_one() * beta2 / beta1, Rational(exact_div(D, w3))) / nu3;
  if (!out.zeta3.is_pure_phase()) throw Error("residual at the third flag is not a root of unity: " + to_string(out.zeta3));
  const Rational n = out.zeta3.phase_turns() * Rational(w3 / gamma);
  if (n.get_den() != 1) throw Error("residual phase is not a (w3/gamma)-th root of unity");
  out.n = n.get_num();
  std::tie(out.l, out.m) = solve_root_congruence(w1, w2, w3, gamma, sign(D), out.n);
  out.zeta1 = MulValue::phase(make_rational(out.l * w1, wv));
  out.zeta2 = MulValue::phase(make_rational(out.m * w2, wv));
  out.beta2 = beta2 * out.zeta1;
  out.beta1 = beta1 * out.zeta2;

  const auto mu = boundary_values(v, out.beta1, out.beta2);
  if (!(mu[0] == nu1 && mu[1] == nu2 && mu[2] == nu3)) throw Error("vertex parameters do not reproduce the flag values");
  return out;
}

std::array<std::complex<double>, 3> boundary_values_numeric(const std::array<Vec2i, 3>& v, std::complex<double> beta1,
                                                            std::complex<double> beta2) {
  const Integer D = det2(v[0], v[1]);
  auto ipow = [](std::complex<double> z, const Integer& k) { return std::pow(z, static_cast<int>(k.get_si())); };
  return {ipow(beta2, exact_div(-D, multiplicity(v[0]))), ipow(beta1, exact_div(D, multiplicity(v[1]))),
          ipow(-beta2 / beta1, exact_div(D, multiplicity(v[2])))};
}

NumericVertexModel betas_from_mus_numeric(const std::array<Vec2i, 3>& v, std::complex<double> nu1,
                                          std::complex<double> nu2, std::complex<double> nu3, double tolerance) {
  using std::numbers::pi;
  const Integer w1 = multiplicity(v[0]);
  const Integer w2 = multiplicity(v[1]);
  const Integer w3 = multiplicity(v[2]);
  const Integer gamma = gcd(gcd(w1, w2), w3);
  const Integer D = det2(v[0], v[1]);
  if (D == 0) throw DomainError("outgoing vectors are parallel");
  const Integer wv = abs(D);
  auto ipow = [](std::complex<double> z, const Integer& k) { return std::pow(z, static_cast<int>(k.get_si())); };
  auto unit = [&](const Rational& turns) { return std::polar(1.0, 2.0 * pi * turns.get_d()); };

  const std::complex<double> relation = ipow(nu1, w1 / gamma) * ipow(nu2, w2 / gamma) * ipow(nu3, w3 / gamma) *
                                        (mod_floor(wv / gamma, 2) == 0 ? 1.0 : -1.0);
  if (std::abs(relation - 1.0) > tolerance) {
    throw DomainError("product relation fails at the vertex; |residual - 1| = " + std::to_string(std::abs(relation - 1.0)));
  }
  NumericVertexModel out;
  const double k1 = exact_div(-D, w1).get_d();
  const double k2 = exact_div(D, w2).get_d();
  std::complex<double> beta2 = std::exp(std::log(nu1) / k1);
  std::complex<double> beta1 = std::exp(std::log(nu2) / k2);
  const std::complex<double> zeta3 = ipow(-beta2 / beta1, exact_div(D, w3)) / nu3;
  const Integer w3p = w3 / gamma;
  double turns = std::arg(zeta3) / (2.0 * pi);
  if (turns < 0) turns += 1.0;
  out.n = mod_floor(Integer(static_cast<long>(std::lround(turns * w3p.get_d()))), w3p);
  std::tie(out.l, out.m) = solve_root_congruence(w1, w2, w3, gamma, sign(D), out.n);
  out.zeta1 = unit(make_rational(out.l * w1, wv));
  out.zeta2 = unit(make_rational(out.m * w2, wv));
  out.beta2 = beta2 * out.zeta1;
  out.beta1 = beta1 * out.zeta2;
  return out;
}

}  // namespace tropreal
