#include <gtest/gtest.h>

#include <regex>

#include "tropreal/errors.hpp"
#include "tropreal/io.hpp"
#include "tropreal/selftest.hpp"
#include "tropreal/svg.hpp"

using namespace tropreal;

namespace {
std::string data(const std::string& name) { return std::string(TROPREAL_DATA_DIR) + "/" + name; }

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

const char* kTheta = R"({
  "lattice": {"lambda1": [1, -1], "lambda2": [1, 2]},
  "multipliers": {"a11": {"modulus": "1", "turns": "0"}, "a12": {"modulus": "1", "turns": "0"},
                  "a21": {"modulus": "1", "turns": "0"}, "a22": {"modulus": "1", "turns": "0"}},
  "vertices": [{"id": "u", "pos": ["0", "0"]}, {"id": "v", "pos": ["1", "0"]}],
  "edges": [{"id": "e1", "tail": "u", "head": "v", "weight_vector": [1, 0], "length": "1"},
            {"id": "e2", "tail": "u", "head": "v", "weight_vector": [0, 1], "length": "1"},
            {"id": "e3", "tail": "u", "head": "v", "weight_vector": [-1, -1], "length": "1", "shift": [1, 1]}],
  "marked_points": [{"edge": "e1", "t": "1/3"}, {"edge": "e2", "t": "1/2"}]
})";
}  // namespace

TEST(CurveFile, DerivedShiftsMatchCatalog) {
  const auto doc = parse_curve(kTheta);
  EXPECT_EQ(doc.curve, selftest::theta(selftest::unit_multipliers()));
  EXPECT_EQ(doc.marked.size(), 2u);
  EXPECT_EQ(doc.marked[0].t, Rational(1, 3));
}

TEST(CurveFile, RoundTrip) {
  const CurveDocument doc{selftest::theta2(), selftest::theta_marks()};
  const auto back = parse_curve(curve_to_json(doc).dump());
  EXPECT_EQ(back.curve, doc.curve);
  EXPECT_EQ(back.marked.size(), 2u);
  EXPECT_EQ(load_curve(data("theta.json")).curve, selftest::theta());
}

TEST(CurveFile, Errors) {
  EXPECT_THROW(load_curve(data("missing.json")), ParseError);
  EXPECT_THROW(load_curve(data("malformed.json")), ParseError);
  std::string nonintegral = kTheta;
  nonintegral.replace(nonintegral.find("\"length\": \"1\"}"), 14, "\"length\": \"1/2\"}");
  EXPECT_THROW(parse_curve(nonintegral), ParseError);
  std::string mixed = kTheta;
  mixed.replace(mixed.find("{\"modulus\": \"1\", \"turns\": \"0\"}"), 30, "{\"formal\": true}");
  EXPECT_THROW(parse_curve(mixed), ParseError);
}

TEST(CurveFile, NumericAndFormalMultipliers) {
  const auto num = load_curve(data("theta_numeric.json"));
  EXPECT_EQ(num.curve.lattice().multipliers.kind, ModeKind::numeric);
  std::string formal = R"({"lattice": {"lambda1": [1, 0], "lambda2": [0, 1]},
    "vertices": [{"id": "a", "pos": ["0", "0"]}],
    "edges": [{"id": "f", "tail": "a", "head": "a", "weight_vector": [1, 0], "length": "1"}]})";
  EXPECT_EQ(parse_curve(formal).curve.lattice().multipliers.kind, ModeKind::formal);
}

TEST(MulValueJson, RoundTrip) {
  const MulValue v = MulValue::alpha(Alpha::a21, Rational(-2, 3)) * MulValue::scalar(12, Rational(1, 2)) *
                     MulValue::phase(Rational(3, 7));
  EXPECT_EQ(mulvalue_from_json(to_json(v)), v);
  EXPECT_EQ(mulvalue_from_json(Json("-3/4")), MulValue::from_rational(Rational(-3, 4)));
}

TEST(Report, TextRenderingIsDeterministic) {
  Json j;
  j["command"] = "x";
  j["list"] = Json::array({1, 2});
  j["nested"]["k"] = "v";
  EXPECT_EQ(render_text(j), render_text(j));
  EXPECT_NE(render_text(j).find("command: x"), std::string::npos);
}

TEST(Svg, ThetaStructure) {
  const std::string svg = plot_svg(selftest::theta());
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_EQ(count(svg, "class=\"vertex\""), 2u);
  EXPECT_GE(count(svg, "class=\"edge\""), 3u);
  EXPECT_EQ(count(svg, "<svg"), 1u);
  EXPECT_EQ(count(svg, "</svg>"), 1u);
  EXPECT_EQ(svg, plot_svg(selftest::theta()));
}

TEST(Svg, CycleWrapsOnce) {
  const std::string svg = plot_svg(selftest::cycle(4));
  EXPECT_EQ(count(svg, "class=\"vertex\""), 4u);
  EXPECT_EQ(count(svg, "class=\"edge\""), 4u);
}
