#include "tropreal/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "tropreal/errors.hpp"

namespace tropreal {

namespace {

struct Point {
  double x;
  double y;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Pieces of the segment a -> a + d in lattice coordinates, each translated into [0,1]^2.
std::vector<std::pair<Vec2q, Vec2q>> wrap(const Vec2q& a, const Vec2q& d) {
  std::vector<Rational> cuts{Rational(0), Rational(1)};
  auto add_cuts = [&](const Rational& start, const Rational& delta) {
    if (delta == 0) return;
    const Rational end = start + delta;
    const Integer lo = floor(Rational(std::min(start, end)));
    const Integer hi = floor(Rational(std::max(start, end)));
    for (Integer k = lo + 1; k <= hi; ++k) {
      Rational tau = (Rational(k) - start) / delta;
      tau.canonicalize();
      if (tau > 0 && tau < 1) cuts.push_back(tau);
    }
  };
  add_cuts(a.x, d.x);
  add_cuts(a.y, d.y);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<std::pair<Vec2q, Vec2q>> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Vec2q p = a + cuts[i] * d;
    const Vec2q q = a + cuts[i + 1] * d;
    const Vec2q mid = make_rational(1, 2) * (p + q);
    const Vec2q shift{Rational(floor(mid.x)), Rational(floor(mid.y))};
    out.emplace_back(p - shift, q - shift);
  }
  return out;
}

}  // namespace

std::string plot_svg(const TropicalCurve& curve, const PlotOptions& opt) {
  const PeriodLattice& lat = curve.lattice();
  Vec2q offset;
  bool found = false;
  for (std::size_t attempt = 0; attempt < 16 && !found; ++attempt) {
    offset = retry_offset(lat, attempt);
    try {
      crossings(curve, offset);
      found = true;
    } catch (const DegenerateOffsetError&) {
    }
  }
  if (!found) throw DegenerateOffsetError("", "no generic offset found for plotting");

  auto world = [&](const Vec2q& st) {
    const Vec2q p = offset + lat.point(st);
    return Point{p.x.get_d(), p.y.get_d()};
  };
  const Point corners[4] = {world({0, 0}), world({1, 0}), world({1, 1}), world({0, 1})};
  double minx = std::numeric_limits<double>::max(), miny = minx;
  double maxx = std::numeric_limits<double>::lowest(), maxy = maxx;
  for (const auto& c : corners) {
    minx = std::min(minx, c.x);
    maxx = std::max(maxx, c.x);
    miny = std::min(miny, c.y);
    maxy = std::max(maxy, c.y);
  }
  const double scale = std::min((opt.width - 2 * opt.margin) / std::max(maxx - minx, 1e-9),
                                (opt.height - 2 * opt.margin) / std::max(maxy - miny, 1e-9));
  auto screen = [&](const Point& p) {
    return Point{opt.margin + (p.x - minx) * scale, opt.height - opt.margin - (p.y - miny) * scale};
  };
  auto sp = [&](const Vec2q& st) { return screen(world(st)); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(opt.width) << "\" height=\""
     << fmt(opt.height) << "\" viewBox=\"0 0 " << fmt(opt.width) << " " << fmt(opt.height) << "\">\n";
  os << "  <g id=\"domain\" fill=\"#f4f4f4\" stroke=\"#888888\" stroke-width=\"1\">\n    <polygon points=\"";
  for (int i = 0; i < 4; ++i) {
    const Point p = screen(corners[i]);
    os << (i ? " " : "") << fmt(p.x) << "," << fmt(p.y);
  }
  os << "\"/>\n  </g>\n";

  const TropicalCurve reduced = reduce_to_domain(curve, offset);
  os << "  <g id=\"edges\" fill=\"none\" stroke=\"#1f4e99\" stroke-width=\"2\">\n";
  for (const auto& e : reduced.edges()) {
    const Vec2q a = lat.coords(reduced.vertex(e.tail).pos - offset);
    const Vec2q d = lat.coords(e.length * to_rational(e.weight_vector));
    const auto pieces = wrap(a, d);
    os << "    <g class=\"edge\" id=\"edge-" << escape(e.id) << "\">\n";
    for (const auto& [p, q] : pieces) {
      const Point s = sp(p);
      const Point t = sp(q);
      os << "      <polyline points=\"" << fmt(s.x) << "," << fmt(s.y) << " " << fmt(t.x) << "," << fmt(t.y) << "\"/>\n";
    }
    const auto& [p0, q0] = pieces.front();
    const Point label = sp(make_rational(1, 2) * (p0 + q0));
    os << "      <text x=\"" << fmt(label.x + 4) << "\" y=\"" << fmt(label.y - 4)
       << "\" font-size=\"11\" fill=\"#1f4e99\" stroke=\"none\">" << escape(e.id) << " w="
       << edge_weight(e).get_str() << "</text>\n";
    os << "    </g>\n";
  }
  os << "  </g>\n";

  os << "  <g id=\"vertices\">\n";
  for (const auto& v : reduced.vertices()) {
    const Point p = sp(lat.coords(v.pos - offset));
    os << "    <circle class=\"vertex\" cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(p.y)
       << "\" r=\"4\" fill=\"#c0392b\"/>\n";
    os << "    <text x=\"" << fmt(p.x + 6) << "\" y=\"" << fmt(p.y + 12) << "\" font-size=\"12\">" << escape(v.id)
       << "</text>\n";
  }
  os << "  </g>\n</svg>\n";
  return os.str();
}

}  // namespace tropreal
