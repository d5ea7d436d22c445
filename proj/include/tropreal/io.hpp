#pragma once

// Curve files and report documents.
//
// A curve file is a JSON object:
//
//   {
//     "lattice": {"lambda1": [1, -1], "lambda2": [1, 2]},
//     "multipliers": {"a11": {"modulus": "2", "turns": "1/4"}, ...},
//     "vertices": [{"id": "u", "pos": ["0", "0"]}, ...],
//     "edges": [{"id": "e1", "tail": "u", "head": "v", "weight_vector": [1, 0],
//                "length": "1", "shift": [0, 0]}, ...],
//     "marked_points": [{"edge": "e1", "t": "1/3"}]
//   }
//
// Multipliers are all {"formal": true} (optionally with a "monomial"), all
// {"modulus", "turns"} or all {"re", "im"}. A missing multipliers object means
// formal symbols. A missing shift is solved from the lift relation.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tropreal/curve.hpp"
#include "tropreal/moduli.hpp"
#include "tropreal/prelog.hpp"
#include "tropreal/realize.hpp"

namespace tropreal {

using Json = nlohmann::ordered_json;

struct CurveDocument {
  TropicalCurve curve;
  std::vector<MarkedPoint> marked;
};

/// Throws ParseError on malformed documents.
CurveDocument parse_curve(std::string_view text);
/// Throws ParseError when the file cannot be read or parsed.
CurveDocument load_curve(const std::string& path);
Json curve_to_json(const CurveDocument& doc);

Json to_json(const MulValue& v);
MulValue mulvalue_from_json(const Json& j);
Json to_json(const Vec2i& v);
Json to_json(const Vec2q& v);
Json to_json(const Integer& v);

Json to_json(const RealizabilityReport& r);
Json to_json(const CountReport& r);
Json to_json(const VerifyReport& r);
Json to_json(const FlagAssignment& a);
Json to_json(const DualFlagSpace& d);

/// Reads {"assignment": [{"vertex", "edge", "value"}]}; a value is a MulValue
/// object or a rational string.
FlagAssignment assignment_from_json(const Json& j);

/// Indented "key: value" rendering of a report document.
std::string render_text(const Json& j);

}  // namespace tropreal
