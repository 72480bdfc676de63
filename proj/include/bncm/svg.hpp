#pragma once

#include <algorithm>
#include <sstream>
#include <string>

#include "bncm/io.hpp"
#include "bncm/matching.hpp"

namespace bncm {

// SVG 1.1 picture of a matching: points as circles, edges as lines, the
// longest edge in a highlighted style. Viewport fitted with a 5% margin.
inline std::string render_svg(const PointSet& ps, const Matching& m) {
  if (m.empty()) throw EmptyMatching("nothing to render");

  double min_x = ps[0].x, max_x = ps[0].x, min_y = ps[0].y, max_y = ps[0].y;
  for (const Point& p : ps.points()) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  double span = std::max(max_x - min_x, max_y - min_y);
  if (!(span > 0.0)) span = 1.0;
  const double margin = 0.05 * span;

  // Flip y so larger y renders upward.
  auto sy = [&](double y) { return (max_y + min_y) - y; };

  std::pair<int, int> longest = m.pairs().front();
  double longest_d2 = -1.0;
  for (const auto& [i, j] : m.pairs()) {
    const double d2v = dist2(ps[i], ps[j]);
    if (d2v > longest_d2) {
      longest_d2 = d2v;
      longest = {i, j};
    }
  }

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
      << format_double(min_x - margin)
      << ' ' << format_double(min_y - margin) << ' ' << format_double(max_x - min_x + 2 * margin)
      << ' ' << format_double(max_y - min_y + 2 * margin) << "\">\n";
  const double stroke = 0.004 * span;
  const double radius = 0.008 * span;
  for (const auto& [i, j] : m.pairs()) {
    const bool hot = std::pair<int, int>{i, j} == longest;
    svg << "  <line class=\"" << (hot ? "bottleneck-edge" : "edge") << "\" x1=\""
        << format_double(ps[i].x) << "\" y1=\"" << format_double(sy(ps[i].y)) << "\" x2=\""
        << format_double(ps[j].x) << "\" y2=\"" << format_double(sy(ps[j].y)) << "\" stroke=\""
        << (hot ? "#d62728" : "#1f77b4") << "\" stroke-width=\""
        << format_double(hot ? 2 * stroke : stroke) << "\"/>\n";
  }
  for (const Point& p : ps.points()) {
    svg << "  <circle cx=\"" << format_double(p.x) << "\" cy=\"" << format_double(sy(p.y))
        << "\" r=\"" << format_double(radius) << "\" fill=\"#333333\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace bncm
