#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bncm/errors.hpp"
#include "bncm/matching.hpp"

namespace bncm {

// Shortest decimal that round-trips the double exactly (up to 17 significant
// digits).
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Point file: one "x y" pair per line, '#' comment lines and blank lines
// ignored.
inline PointSet read_points(std::istream& in, const std::string& source = "<stream>") {
  std::vector<Point> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double x = 0.0, y = 0.0;
    std::string extra;
    if (!(ls >> x >> y)) {
      throw ParseError(source + ":" + std::to_string(lineno) + ": expected 'x y'");
    }
    if (ls >> extra) {
      throw ParseError(source + ":" + std::to_string(lineno) + ": trailing content '" + extra +
                       "'");
    }
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw ParseError(source + ":" + std::to_string(lineno) + ": non-finite coordinate");
    }
    pts.push_back(Point{x, y});
  }
  if (pts.empty()) {
    throw ParseError(source + ": no points found");
  }
  return PointSet(std::move(pts));
}

inline PointSet read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOFailure("cannot open '" + path + "' for reading");
  return read_points(in, path);
}

inline void write_points(std::ostream& out, const PointSet& ps) {
  for (const Point& p : ps.points()) {
    out << format_double(p.x) << ' ' << format_double(p.y) << '\n';
  }
}

inline void write_points_file(const std::string& path, const PointSet& ps,
                              const std::string& header = "") {
  std::ostringstream body;
  if (!header.empty()) body << "# " << header << '\n';
  write_points(body, ps);
  std::ofstream out(path);
  if (!out) throw IOFailure("cannot open '" + path + "' for writing");
  out << body.str();
  if (!out) throw IOFailure("failed writing '" + path + "'");
}

}  // namespace bncm
