#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tropreal/errors.hpp"
#include "tropreal/io.hpp"
#include "tropreal/moduli.hpp"
#include "tropreal/prelog.hpp"
#include "tropreal/realize.hpp"
#include "tropreal/selftest.hpp"
#include "tropreal/svg.hpp"

namespace py = pybind11;
using namespace tropreal;

namespace {

EqualityMode mode_of(const TropicalCurve& c, const std::string& name, double tol) {
  ModeKind kind = c.lattice().multipliers.kind;
  if (!name.empty()) {
    const auto parsed = parse_mode(name);
    if (!parsed) throw ConfigError("unknown mode '" + name + "'");
    kind = *parsed;
  }
  return mode_for(c.lattice(), kind, tol);
}

std::string realizability_json(const CurveDocument& d, const std::string& mode, double tol) {
  require_valid(d.curve);
  return to_json(realizability(d.curve, mode_of(d.curve, mode, tol))).dump();
}

std::string count_json(const CurveDocument& d, const std::string& mode, double tol) {
  require_valid(d.curve);
  return to_json(count_curves(d.curve, d.marked, mode_of(d.curve, mode, tol))).dump();
}

std::string prelog_json(const CurveDocument& d, const std::string& mode, double tol) {
  require_valid(d.curve);
  const EqualityMode m = mode_of(d.curve, mode, tol);
  const auto sys = assemble_system(d.curve);
  const auto res = solve_monomial(sys, m);
  Json j;
  j["feasible"] = std::string(decision_name(res.feasible));
  if (res.feasible == Decision::yes) {
    const auto a = to_assignment(sys, res);
    j["assignment"] = to_json(a);
    j["verification"] = to_json(verify_assignment(d.curve, a, m));
  } else {
    Json w = Json::array();
    for (const auto& x : res.witnesses) w.push_back(to_string(x.value));
    j["witnesses"] = w;
  }
  return j.dump();
}

std::vector<std::string> snf_diagonal(const std::vector<std::vector<long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<std::vector<Integer>> big;
  for (const auto& r : rows) {
    if (r.size() != cols) throw DomainError("ragged matrix");
    big.emplace_back(r.begin(), r.end());
  }
  std::vector<std::string> out;
  for (const auto& d : snf(IntMatrix::from_rows(big, cols)).diagonal()) out.push_back(to_string(d));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Realizability and counting for tropical curves in real tori";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<ConstraintError>(m, "ConstraintError", error.ptr());
  py::register_exception<DegenerateOffsetError>(m, "DegenerateOffsetError", error.ptr());
  py::register_exception<NotRealizable>(m, "NotRealizable", error.ptr());

  py::class_<CurveDocument>(m, "Curve")
      .def_property_readonly("genus", [](const CurveDocument& d) { return genus(d.curve).get_si(); })
      .def_property_readonly("delta", [](const CurveDocument& d) { return curve_delta(d.curve).get_si(); })
      .def_property_readonly("parity", [](const CurveDocument& d) { return parity(d.curve); })
      .def_property_readonly("vertices", [](const CurveDocument& d) {
        std::vector<std::string> ids;
        for (const auto& v : d.curve.vertices()) ids.push_back(v.id);
        return ids;
      })
      .def_property_readonly("edges", [](const CurveDocument& d) {
        std::vector<std::string> ids;
        for (const auto& e : d.curve.edges()) ids.push_back(e.id);
        return ids;
      })
      .def("violations", [](const CurveDocument& d) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& v : validate(d.curve)) out.emplace_back(v.code, v.message);
        return out;
      })
      .def("deformation_ranks", [](const CurveDocument& d) {
        const auto r = deformation_ranks(d.curve);
        return std::pair<std::size_t, std::size_t>{r.rank_kernel, r.rank_cokernel};
      })
      .def("sigma", [](const CurveDocument& d) { return to_string(sigma_cocycle(d.curve)); })
      .def("sigma_geometric", [](const CurveDocument& d) { return to_string(sigma_geometric_auto(d.curve).sigma); })
      .def("to_json", [](const CurveDocument& d) { return curve_to_json(d).dump(); });

  m.def("parse_curve", &parse_curve, py::arg("text"));
  m.def("load_curve", &load_curve, py::arg("path"));
  m.def("theta", [] { return CurveDocument{selftest::theta(selftest::unit_multipliers()), selftest::theta_marks()}; });
  m.def("_realizability", &realizability_json, py::arg("curve"), py::arg("mode") = "", py::arg("tol") = kDefaultTolerance);
  m.def("_count", &count_json, py::arg("curve"), py::arg("mode") = "", py::arg("tol") = kDefaultTolerance);
  m.def("_prelog", &prelog_json, py::arg("curve"), py::arg("mode") = "", py::arg("tol") = kDefaultTolerance);
  m.def("plot_svg", [](const CurveDocument& d) { return plot_svg(d.curve); }, py::arg("curve"));
  m.def("_snf_diagonal", &snf_diagonal, py::arg("rows"));
  m.def(
      "_selftest",
      [](std::uint64_t seed, std::size_t cases) {
        std::vector<std::tuple<std::string, bool, std::size_t, std::string>> out;
        for (const auto& r : selftest::run_all({seed, cases})) out.emplace_back(r.name, r.passed, r.checks, r.detail);
        return out;
      },
      py::arg("seed") = selftest::Options{}.seed, py::arg("cases") = selftest::Options{}.cases);
}
