#include "tropreal/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "tropreal/errors.hpp"

namespace tropreal {

namespace {

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing key '" + key + "'");
  return j.at(key);
}

std::string need_string(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_string()) throw ParseError(where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

Rational rational_of(const Json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(Integer(v.dump()));
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  } catch (const std::invalid_argument&) {
  }
  throw ParseError(where + ": expected a rational string such as \"1/3\"");
}

Integer integer_of(const Json& v, const std::string& where) {
  try {
    if (v.is_number_integer()) return Integer(v.dump());
    if (v.is_string()) return parse_integer(v.get<std::string>());
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  } catch (const std::invalid_argument&) {
  }
  throw ParseError(where + ": expected an integer");
}

Vec2i vec2i_of(const Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) throw ParseError(where + ": expected an integer pair");
  return {integer_of(v[0], where), integer_of(v[1], where)};
}

Vec2q vec2q_of(const Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) throw ParseError(where + ": expected a pair of rational strings");
  return {rational_of(v[0], where), rational_of(v[1], where)};
}

std::pair<ModeKind, MultiplierSpec> multiplier_of(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": multiplier must be an object");
  if (j.contains("formal")) {
    if (j.contains("monomial")) return {ModeKind::formal, mulvalue_from_json(j.at("monomial"))};
    return {ModeKind::formal, MulValue()};
  }
  if (j.contains("modulus") || j.contains("turns")) {
    PolarRational p;
    p.modulus = rational_of(need(j, "modulus", where), where + ".modulus");
    p.turns = j.contains("turns") ? rational_of(j.at("turns"), where + ".turns") : Rational(0);
    return {ModeKind::exact, p};
  }
  if (j.contains("re") || j.contains("im")) {
    const double re = j.value("re", 0.0);
    const double im = j.value("im", 0.0);
    return {ModeKind::numeric, std::complex<double>(re, im)};
  }
  throw ParseError(where + ": multiplier needs 'formal', 'modulus'/'turns' or 're'/'im'");
}

Json multiplier_to_json(Alpha sym, const MultiplierSpec& spec) {
  Json j;
  if (const auto* m = std::get_if<MulValue>(&spec)) {
    j["formal"] = true;
    if (!(*m == MulValue::alpha(sym)) && !m->is_identity()) j["monomial"] = to_json(*m);
  } else if (const auto* p = std::get_if<PolarRational>(&spec)) {
    j["modulus"] = to_string(p->modulus);
    j["turns"] = to_string(p->turns);
  } else {
    const auto& c = std::get<std::complex<double>>(spec);
    j["re"] = c.real();
    j["im"] = c.imag();
  }
  return j;
}

}  // namespace

CurveDocument parse_curve(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed curve document: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("curve document must be a JSON object");
  try {
    PeriodLattice lat;
    const Json& lj = need(root, "lattice", "document");
    lat.lambda1 = vec2i_of(need(lj, "lambda1", "lattice"), "lattice.lambda1");
    lat.lambda2 = vec2i_of(need(lj, "lambda2", "lattice"), "lattice.lambda2");

    lat.multipliers.kind = ModeKind::formal;
    const Json* mj = root.contains("multipliers") ? &root.at("multipliers") : nullptr;
    if (!mj && lj.contains("multipliers")) mj = &lj.at("multipliers");
    if (mj) {
      if (!mj->is_object()) throw ParseError("multipliers must be an object");
      std::optional<ModeKind> kind;
      for (const auto& [key, value] : mj->items()) {
        const auto sym = parse_alpha(key);
        if (!sym) throw ParseError("multipliers: unknown symbol '" + key + "'");
        auto [k, spec] = multiplier_of(value, "multipliers." + key);
        if (kind && *kind != k) throw ParseError("multipliers: mixed multiplier modes are not allowed");
        kind = k;
        if (k == ModeKind::formal && std::get<MulValue>(spec).is_identity() && !value.contains("monomial")) {
          spec = MulValue::alpha(*sym);
        }
        lat.multipliers.values[*sym] = spec;
      }
      if (kind) lat.multipliers.kind = *kind;
      if (kind && *kind != ModeKind::formal && lat.multipliers.values.size() != 4) {
        throw ParseError("multipliers: all four symbols a11, a12, a21, a22 need values");
      }
    }

    if (lat.multipliers.kind == ModeKind::formal) {
      for (Alpha a : kAllAlphas) lat.multipliers.values.try_emplace(a, MulValue::alpha(a));
    }

    std::vector<TropicalVertex> vertices;
    const Json& vj = need(root, "vertices", "document");
    if (!vj.is_array()) throw ParseError("vertices must be an array");
    for (std::size_t i = 0; i < vj.size(); ++i) {
      const std::string where = "vertices[" + std::to_string(i) + "]";
      vertices.push_back({need_string(vj[i], "id", where), vec2q_of(need(vj[i], "pos", where), where + ".pos")});
    }

    std::vector<TropicalEdge> edges;
    std::vector<bool> derive;
    const Json& ej = need(root, "edges", "document");
    if (!ej.is_array()) throw ParseError("edges must be an array");
    for (std::size_t i = 0; i < ej.size(); ++i) {
      const std::string where = "edges[" + std::to_string(i) + "]";
      TropicalEdge e;
      e.id = need_string(ej[i], "id", where);
      e.tail = need_string(ej[i], "tail", where);
      e.head = need_string(ej[i], "head", where);
      e.weight_vector = vec2i_of(need(ej[i], "weight_vector", where), where + ".weight_vector");
      e.length = ej[i].contains("length") ? rational_of(ej[i].at("length"), where + ".length") : Rational(1);
      const bool has_shift = ej[i].contains("shift");
      if (has_shift) e.shift = vec2i_of(ej[i].at("shift"), where + ".shift");
      derive.push_back(!has_shift);
      edges.push_back(std::move(e));
    }

    // Solve omitted shifts from the lift relation.
    std::map<std::string, Vec2q> pos;
    for (const auto& v : vertices) pos.emplace(v.id, v.pos);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!derive[i]) continue;
      auto& e = edges[i];
      if (!pos.count(e.tail) || !pos.count(e.head)) continue;
      if (lat.determinant() == 0) throw ParseError("edge '" + e.id + "': cannot derive a shift over a degenerate lattice");
      const Vec2q c = lat.coords(pos[e.head] - pos[e.tail] - e.length * to_rational(e.weight_vector));
      if (c.x.get_den() != 1 || c.y.get_den() != 1) {
        throw ParseError("edge '" + e.id + "': lift relation gives non-integral shift " + to_string(c));
      }
      e.shift = {c.x.get_num(), c.y.get_num()};
    }

    CurveDocument doc;
    doc.curve = TropicalCurve(std::move(lat), std::move(vertices), std::move(edges));
    if (root.contains("marked_points")) {
      const Json& mp = root.at("marked_points");
      if (!mp.is_array()) throw ParseError("marked_points must be an array");
      for (std::size_t i = 0; i < mp.size(); ++i) {
        const std::string where = "marked_points[" + std::to_string(i) + "]";
        doc.marked.push_back({need_string(mp[i], "edge", where), rational_of(need(mp[i], "t", where), where + ".t")});
      }
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("curve document: ") + e.what());
  }
}

CurveDocument load_curve(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_curve(buf.str());
}

Json to_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Json to_json(const Vec2i& v) { return Json::array({to_json(v.x), to_json(v.y)}); }

Json to_json(const Vec2q& v) { return Json::array({to_string(v.x), to_string(v.y)}); }

Json curve_to_json(const CurveDocument& doc) {
  const TropicalCurve& c = doc.curve;
  Json j;
  j["lattice"] = {{"lambda1", to_json(c.lattice().lambda1)}, {"lambda2", to_json(c.lattice().lambda2)}};
  Json m = Json::object();
  for (const auto& [sym, spec] : c.lattice().multipliers.values) m[std::string(alpha_name(sym))] = multiplier_to_json(sym, spec);
  if (m.empty()) {
    for (Alpha a : kAllAlphas) m[std::string(alpha_name(a))] = {{"formal", true}};
  }
  j["multipliers"] = m;
  Json vs = Json::array();
  for (const auto& v : c.vertices()) vs.push_back({{"id", v.id}, {"pos", to_json(v.pos)}});
  j["vertices"] = vs;
  Json es = Json::array();
  for (const auto& e : c.edges()) {
    es.push_back({{"id", e.id},
                  {"tail", e.tail},
                  {"head", e.head},
                  {"weight_vector", to_json(e.weight_vector)},
                  {"length", to_string(e.length)},
                  {"shift", to_json(e.shift)}});
  }
  j["edges"] = es;
  Json mp = Json::array();
  for (const auto& p : doc.marked) mp.push_back({{"edge", p.edge}, {"t", to_string(p.t)}});
  j["marked_points"] = mp;
  return j;
}

Json to_json(const MulValue& v) {
  Json j;
  Json a = Json::array();
  for (const auto& [sym, e] : v.alpha_exponents()) a.push_back(Json::array({std::string(alpha_name(sym)), to_string(e)}));
  Json s = Json::array();
  for (const auto& [p, e] : v.scalar_exponents()) s.push_back(Json::array({p.get_str(), to_string(e)}));
  j["alpha"] = a;
  j["scalar"] = s;
  j["phase"] = to_string(v.phase_turns());
  j["text"] = to_string(v);
  return j;
}

MulValue mulvalue_from_json(const Json& j) {
  if (j.is_string() || j.is_number_integer()) return MulValue::from_rational(rational_of(j, "value"));
  if (!j.is_object()) throw ParseError("value must be an object or a rational string");
  MulValue v;
  if (j.contains("alpha")) {
    for (const auto& pair : j.at("alpha")) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string()) throw ParseError("alpha entries are [symbol, exponent]");
      const auto sym = parse_alpha(pair[0].get<std::string>());
      if (!sym) throw ParseError("unknown symbol '" + pair[0].get<std::string>() + "'");
      v *= MulValue::alpha(*sym, rational_of(pair[1], "alpha exponent"));
    }
  }
  if (j.contains("scalar")) {
    for (const auto& pair : j.at("scalar")) {
      if (!pair.is_array() || pair.size() != 2) throw ParseError("scalar entries are [base, exponent]");
      const Rational base = rational_of(pair[0], "scalar base");
      if (base <= 0) throw ParseError("scalar base must be positive");
      v *= MulValue::scalar(base, rational_of(pair[1], "scalar exponent"));
    }
  }
  if (j.contains("phase")) v *= MulValue::phase(rational_of(j.at("phase"), "phase"));
  return v;
}

Json to_json(const RealizabilityReport& r) {
  Json j;
  j["sigma"] = to_json(r.sigma);
  j["parity"] = r.parity;
  j["target"] = to_json(r.target);
  j["mode"] = std::string(mode_name(r.mode));
  j["verdict"] = std::string(decision_name(r.verdict));
  j["certificate"] = r.certificate;
  return j;
}

Json to_json(const CountReport& r) {
  Json j;
  j["kernel_order"] = r.kernel_order ? to_json(*r.kernel_order) : Json("infinite");
  Json d = Json::array();
  for (const auto& x : r.elementary_divisors) d.push_back(to_json(x));
  j["elementary_divisors"] = d;
  j["edge_weight_product"] = to_json(r.edge_weight_product);
  j["total"] = r.total ? to_json(*r.total) : Json("infinite");
  return j;
}

Json to_json(const FlagAssignment& a) {
  Json arr = Json::array();
  for (const auto& [flag, value] : a.values) {
    arr.push_back({{"vertex", flag.vertex}, {"edge", flag.edge}, {"value", to_json(value)}});
  }
  return arr;
}

Json to_json(const VerifyReport& r) {
  Json j;
  j["pass"] = r.pass;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"row", row.label},
                    {"result", std::string(decision_name(row.test.verdict))},
                    {"residual", to_string(row.residual)}});
  }
  j["rows"] = rows;
  return j;
}

Json to_json(const DualFlagSpace& d) {
  Json j;
  j["dimension"] = d.dimension;
  Json g = Json::array();
  for (const auto& [flag, u] : d.generator) g.push_back({{"vertex", flag.vertex}, {"edge", flag.edge}, {"u", to_json(u)}});
  j["generator"] = g;
  return j;
}

FlagAssignment assignment_from_json(const Json& j) {
  const Json* arr = &j;
  if (j.is_object()) arr = &need(j, "assignment", "assignment document");
  if (!arr->is_array()) throw ParseError("assignment must be an array");
  FlagAssignment a;
  for (const auto& entry : *arr) {
    a.values[{need_string(entry, "vertex", "assignment"), need_string(entry, "edge", "assignment")}] =
        mulvalue_from_json(need(entry, "value", "assignment"));
  }
  return a;
}

namespace {

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_float()) {
    std::ostringstream os;
    os << std::setprecision(12) << j.get<double>();
    return os.str();
  }
  return j.dump();
}

bool is_flat_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j) {
    if (x.is_object()) return false;
    if (x.is_array() && !is_flat_array(x)) return false;
  }
  return true;
}

std::string inline_text(const Json& j) {
  if (!j.is_array()) return scalar_text(j);
  std::string out = "[";
  for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + inline_text(j[i]);
  return out + "]";
}

void render(const Json& j, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      if (value.contains("text") && value.contains("phase")) {
        os << pad << key << ": " << value.at("text").get<std::string>() << "\n";
        continue;
      }
      os << pad << key << ":\n";
      render(value, indent + 1, os);
    } else if (value.is_array() && !is_flat_array(value)) {
      os << pad << key << ":\n";
      for (const auto& item : value) {
        if (item.is_object()) {
          std::ostringstream sub;
          render(item, 0, sub);
          std::string line = sub.str();
          std::string joined;
          std::istringstream lines(line);
          std::string l;
          while (std::getline(lines, l)) joined += (joined.empty() ? "" : ", ") + l;
          os << pad << "  - " << joined << "\n";
        } else {
          os << pad << "  - " << inline_text(item) << "\n";
        }
      }
    } else {
      os << pad << key << ": " << inline_text(value) << "\n";
    }
  }
}

}  // namespace

std::string render_text(const Json& j) {
  std::ostringstream os;
  render(j, 0, os);
  return os.str();
}

}  // namespace tropreal
