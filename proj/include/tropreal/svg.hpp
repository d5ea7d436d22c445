#pragma once

#include <string>

#include "tropreal/curve.hpp"

namespace tropreal {

struct PlotOptions {
  double width = 640.0;
  double height = 640.0;
  double margin = 40.0;
};

/// SVG 1.1 drawing of the curve inside one fundamental parallelogram. Edge
/// segments are cut at the walls and re-enter on the opposite side.
std::string plot_svg(const TropicalCurve& curve, const PlotOptions& options = {});

}  // namespace tropreal
