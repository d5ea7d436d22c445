// tropreal: command-line front end.
//
// Exit codes: 0 success, 1 I/O or parse error, 2 invalid curve, 3 no generic
// offset found, 4 unrealizable or infeasible, 5 unusable point constraints.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tropreal/errors.hpp"
#include "tropreal/io.hpp"
#include "tropreal/moduli.hpp"
#include "tropreal/prelog.hpp"
#include "tropreal/realize.hpp"
#include "tropreal/selftest.hpp"
#include "tropreal/svg.hpp"

namespace {

using namespace tropreal;

enum Exit { kOk = 0, kIo = 1, kInvalid = 2, kDegenerate = 3, kInfeasible = 4, kConstraint = 5 };

struct Common {
  std::string file;
  std::string mode;
  double tol = kDefaultTolerance;
  bool json = false;
};

void emit(const Json& report, bool json) {
  if (json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << render_text(report);
  }
}

Json invariants(const TropicalCurve& c) {
  Json j;
  j["genus"] = to_json(genus(c));
  j["delta"] = to_json(curve_delta(c));
  Json w;
  for (const auto& v : c.vertices()) w[v.id] = to_json(vertex_weight(c, v.id));
  j["vertex_weights"] = w;
  j["parity"] = parity(c);
  return j;
}

Json warning_list(const TropicalCurve& c) {
  Json w = Json::array();
  for (const auto& s : warnings(c)) w.push_back(s);
  return w;
}

EqualityMode resolve_mode(const Common& opt, const TropicalCurve& c) {
  std::string name = opt.mode;
  if (name.empty()) {
    if (const char* env = std::getenv("TROPREAL_MODE")) name = env;
  }
  ModeKind kind = c.lattice().multipliers.kind;
  if (!name.empty()) {
    const auto parsed = parse_mode(name);
    if (!parsed) throw ConfigError("unknown mode '" + name + "' (expected formal, exact or numeric)");
    kind = *parsed;
  }
  return mode_for(c.lattice(), kind, opt.tol);
}

/// Loads and validates; prints violations and returns the exit code on failure.
std::optional<CurveDocument> load_valid(const Common& opt, int& code, const std::string& command) {
  CurveDocument doc = load_curve(opt.file);
  const auto violations = validate(doc.curve);
  if (violations.empty()) return doc;
  Json report;
  report["command"] = command;
  report["file"] = opt.file;
  report["valid"] = false;
  Json v = Json::array();
  for (const auto& x : violations) v.push_back({{"code", x.code}, {"message", x.message}});
  report["violations"] = v;
  emit(report, opt.json);
  code = kInvalid;
  return std::nullopt;
}

Json header(const std::string& command, const Common& opt) {
  Json j;
  j["command"] = command;
  j["file"] = opt.file;
  return j;
}

int cmd_validate(const Common& opt) {
  int code = kOk;
  auto doc = load_valid(opt, code, "validate");
  if (!doc) return code;
  Json r = header("validate", opt);
  r["valid"] = true;
  r["violations"] = Json::array();
  r["warnings"] = warning_list(doc->curve);
  emit(r, opt.json);
  return kOk;
}

int cmd_analyze(const Common& opt) {
  int code = kOk;
  auto doc = load_valid(opt, code, "analyze");
  if (!doc) return code;
  const TropicalCurve& c = doc->curve;
  Json r = header("analyze", opt);
  r["curve"] = invariants(c);
  Json e;
  for (const auto& edge : c.edges()) e[edge.id] = to_json(edge_weight(edge));
  r["edge_weights"] = e;
  const auto ranks = deformation_ranks(c);
  r["deformation_ranks"] = {{"kernel", ranks.rank_kernel}, {"cokernel", ranks.rank_cokernel}};
  r["dual_flag_space"] = to_json(dual_flag_space(c));
  r["warnings"] = warning_list(c);
  emit(r, opt.json);
  return kOk;
}

constexpr const char* kFormalCaveat =
    "formal verdict assumes the multipliers satisfy no hidden multiplicative relation; "
    "rerun in exact or numeric mode with concrete values to decide a specific torus";

int cmd_realizable(const Common& opt) {
  int code = kOk;
  auto doc = load_valid(opt, code, "realizable");
  if (!doc) return code;
  const TropicalCurve& c = doc->curve;
  const EqualityMode mode = resolve_mode(opt, c);
  const RealizabilityReport rep = realizability(c, mode);
  const GeometricSigma geo = sigma_geometric_auto(c);
  Json r = header("realizable", opt);
  r["curve"] = invariants(c);
  r["mode"] = std::string(mode_name(mode.kind));
  r["sigma_cocycle"] = to_json(rep.sigma);
  r["sigma_geometric"] = to_json(geo.sigma);
  r["offset"] = to_json(geo.offset);
  r["sigma_agree"] = geo.sigma == rep.sigma;
  r["parity"] = rep.parity;
  r["target"] = to_json(rep.target);
  r["verdict"] = std::string(decision_name(rep.verdict));
  r["certificate"] = rep.certificate;
  Json w = warning_list(c);
  if (rep.verdict == Decision::undecided) w.push_back("numeric verdict is within the undecided margin");
  if (rep.verdict == Decision::no && mode.kind == ModeKind::formal) w.push_back(kFormalCaveat);
  r["warnings"] = w;
  emit(r, opt.json);
  if (!(geo.sigma == rep.sigma)) {
    std::cerr << "error: the two sigma computations disagree\n";
    return kDegenerate;
  }
  return kOk;
}

int cmd_count(const Common& opt) {
  int code = kOk;
  auto doc = load_valid(opt, code, "count");
  if (!doc) return code;
  const TropicalCurve& c = doc->curve;
  const EqualityMode mode = resolve_mode(opt, c);
  Json r = header("count", opt);
  r["curve"] = invariants(c);
  r["mode"] = std::string(mode_name(mode.kind));
  Json marks = Json::array();
  for (const auto& p : doc->marked) marks.push_back({{"edge", p.edge}, {"t", to_string(p.t)}});
  r["marked_points"] = marks;
  try {
    const CountReport rep = count_curves(c, doc->marked, mode);
    r["count"] = to_json(rep);
    r["warnings"] = warning_list(c);
    emit(r, opt.json);
    return kOk;
  } catch (const NotRealizable& e) {
    r["realizability"] = to_json(e.report());
    Json w = warning_list(c);
    if (mode.kind == ModeKind::formal) w.push_back(kFormalCaveat);
    r["warnings"] = w;
    emit(r, opt.json);
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ConstraintError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConstraint;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConstraint;
  }
}

int cmd_prelog(const Common& opt, const std::string& check) {
  int code = kOk;
  auto doc = load_valid(opt, code, "prelog");
  if (!doc) return code;
  const TropicalCurve& c = doc->curve;
  const EqualityMode mode = resolve_mode(opt, c);
  Json r = header("prelog", opt);
  r["mode"] = std::string(mode_name(mode.kind));
  if (!check.empty()) {
    std::ifstream in(check);
    if (!in) throw ParseError("cannot read '" + check + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed assignment: ") + e.what());
    }
    const VerifyReport v = verify_assignment(c, assignment_from_json(j), mode);
    r["check"] = check;
    r["verification"] = to_json(v);
    Json failing = Json::array();
    for (const auto& row : v.rows) {
      if (row.test.verdict != Decision::yes) failing.push_back(row.label);
    }
    r["failing_rows"] = failing;
    emit(r, opt.json);
    return v.pass ? kOk : kInfeasible;
  }
  const MonomialSystem s = assemble_system(c);
  const SolveResult sol = solve_monomial(s, mode);
  r["unknowns"] = s.unknowns.size();
  r["relations"] = s.rhs.size();
  r["feasible"] = std::string(decision_name(sol.feasible));
  Json kernel = Json::array();
  for (const auto& k : sol.kernel) {
    Json dir = Json::array();
    for (const auto& x : k.direction) dir.push_back(to_json(x));
    kernel.push_back({{"order", k.order == 0 ? Json("free") : to_json(k.order)}, {"direction", dir}});
  }
  if (sol.feasible == Decision::no) {
    Json w = Json::array();
    for (const auto& x : sol.witnesses) w.push_back({{"row", x.row}, {"value", to_json(x.value)}, {"test", x.test.certificate}});
    r["witnesses"] = w;
    Json warn = warning_list(c);
    if (mode.kind == ModeKind::formal) warn.push_back(kFormalCaveat);
    r["warnings"] = warn;
    emit(r, opt.json);
    return kInfeasible;
  }
  const FlagAssignment a = to_assignment(s, sol);
  r["assignment"] = to_json(a);
  r["kernel_generators"] = kernel;
  r["verification"] = to_json(verify_assignment(c, a, mode));
  Json w = Json::array();
  if (sol.feasible == Decision::undecided) w.push_back("numeric feasibility is within the undecided margin");
  r["warnings"] = w;
  emit(r, opt.json);
  return kOk;
}

int cmd_plot(const Common& opt, const std::string& out) {
  int code = kOk;
  auto doc = load_valid(opt, code, "plot");
  if (!doc) return code;
  const std::string svg = plot_svg(doc->curve);
  if (out.empty()) {
    std::cout << svg;
    return kOk;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f || !(f << svg)) {
    std::cerr << "error: cannot write '" << out << "'\n";
    return kIo;
  }
  return kOk;
}

int cmd_selftest(std::uint64_t seed, std::size_t cases, bool json) {
  selftest::Options o;
  o.seed = seed;
  o.cases = cases;
  const auto results = selftest::run_all(o);
  bool ok = true;
  Json r;
  r["command"] = "selftest";
  r["seed"] = seed;
  r["cases"] = cases;
  Json suites = Json::array();
  for (const auto& s : results) {
    ok = ok && s.passed;
    Json j{{"suite", s.name}, {"result", s.passed ? "pass" : "fail"}, {"checks", s.checks}};
    if (!s.passed) j["counterexample"] = s.detail;
    suites.push_back(j);
  }
  r["suites"] = suites;
  r["passed"] = ok;
  if (json) {
    std::cout << r.dump(2) << "\n";
  } else {
    for (const auto& s : results) {
      std::cout << (s.passed ? "PASS " : "FAIL ") << s.name << " (" << s.checks << " checks)\n";
      if (!s.passed) std::cout << "  " << s.detail << "\n";
    }
  }
  return ok ? kOk : kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Realizability and counting for tropical curves in real tori"};
  app.require_subcommand(1);
  Common opt;
  std::string check;
  std::string out;
  std::uint64_t seed = selftest::Options{}.seed;
  std::size_t cases = selftest::Options{}.cases;

  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", opt.file, "Curve file (JSON)")->required();
    sub->add_flag("--json", opt.json, "Emit the report as JSON");
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", opt.mode, "formal, exact or numeric (default: TROPREAL_MODE, else the file's multipliers)");
    sub->add_option("--tol", opt.tol, "Numeric tolerance")->check(CLI::PositiveNumber);
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check a curve file");
  add_file(validate_cmd);
  auto* analyze_cmd = app.add_subcommand("analyze", "Print curve invariants");
  add_file(analyze_cmd);
  auto* realizable_cmd = app.add_subcommand("realizable", "Decide realizability");
  add_file(realizable_cmd);
  add_mode(realizable_cmd);
  auto* count_cmd = app.add_subcommand("count", "Count curves through the marked points");
  add_file(count_cmd);
  add_mode(count_cmd);
  auto* prelog_cmd = app.add_subcommand("prelog", "Solve the gluing system");
  add_file(prelog_cmd);
  add_mode(prelog_cmd);
  prelog_cmd->add_option("--check", check, "Verify an assignment file instead of solving");
  auto* plot_cmd = app.add_subcommand("plot", "Draw the curve as SVG");
  add_file(plot_cmd);
  plot_cmd->add_option("--out", out, "Output path (default: stdout)");
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the property suites");
  selftest_cmd->add_option("--seed", seed, "Random seed");
  selftest_cmd->add_option("--cases", cases, "Number of generated curves")->check(CLI::PositiveNumber);
  selftest_cmd->add_flag("--json", opt.json, "Emit the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kIo;
  }

  try {
    if (*validate_cmd) return cmd_validate(opt);
    if (*analyze_cmd) return cmd_analyze(opt);
    if (*realizable_cmd) return cmd_realizable(opt);
    if (*count_cmd) return cmd_count(opt);
    if (*prelog_cmd) return cmd_prelog(opt, check);
    if (*plot_cmd) return cmd_plot(opt, out);
    if (*selftest_cmd) return cmd_selftest(seed, cases, opt.json);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const DegenerateOffsetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDegenerate;
  } catch (const ConstraintError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConstraint;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kOk;
}
