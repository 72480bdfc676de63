#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bncm/errors.hpp"
#include "bncm/geometry.hpp"
#include "bncm/grid.hpp"
#include "bncm/matching.hpp"

namespace bncm {

// The point of the cell closest (in l1 distance, equivalently distance to the
// diagonal support line through the corner) to corner `a`. Ties break
// lexicographically by coordinates.
inline int pick_d_endpoint(const PointSet& ps, Point a, const std::vector<int>& cell_points) {
  if (cell_points.empty()) throw EmptyCell("no points available for a d-endpoint");
  int best = cell_points.front();
  double best_d = l1_dist(ps[best], a);
  for (std::size_t k = 1; k < cell_points.size(); ++k) {
    const int pid = cell_points[k];
    const double d = l1_dist(ps[pid], a);
    if (d < best_d || (d == best_d && ps[pid] < ps[best])) {
      best = pid;
      best_d = d;
    }
  }
  return best;
}

namespace detail {

// Extreme point in a direction; ties resolved by the other coordinate so the
// result is unique for distinct points.
inline bool more_extreme(const Point& cand, const Point& cur, Dir dir) {
  switch (dir) {
    case Dir::Up: return cand.y > cur.y || (cand.y == cur.y && cand.x > cur.x);
    case Dir::Down: return cand.y < cur.y || (cand.y == cur.y && cand.x < cur.x);
    case Dir::Left: return cand.x < cur.x || (cand.x == cur.x && cand.y < cur.y);
    case Dir::Right: return cand.x > cur.x || (cand.x == cur.x && cand.y > cur.y);
  }
  return false;
}

inline int extreme_point(const PointSet& ps, const std::vector<int>& candidates, Dir dir) {
  int best = candidates.front();
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    if (more_extreme(ps[candidates[k]], ps[best], dir)) best = candidates[k];
  }
  return best;
}

// The two corners of the cell on side `dir`.
inline std::array<Point, 2> side_corner_points(const GridContext& g, CellIndex c, Dir dir) {
  const auto [lo, hi] = g.cell_bounds(c);
  switch (dir) {
    case Dir::Up: return {Point{lo.x, hi.y}, Point{hi.x, hi.y}};
    case Dir::Down: return {Point{lo.x, lo.y}, Point{hi.x, lo.y}};
    case Dir::Left: return {Point{lo.x, lo.y}, Point{lo.x, hi.y}};
    case Dir::Right: return {Point{hi.x, lo.y}, Point{hi.x, hi.y}};
  }
  return {Point{}, Point{}};
}

inline bool in_closed_triangle(const Point& p, const Point& t1, const Point& t2, const Point& t3) {
  const Orientation o1 = orientation(t1, t2, p);
  const Orientation o2 = orientation(t2, t3, p);
  const Orientation o3 = orientation(t3, t1, p);
  const bool has_ccw = o1 == Orientation::CCW || o2 == Orientation::CCW || o3 == Orientation::CCW;
  const bool has_cw = o1 == Orientation::CW || o2 == Orientation::CW || o3 == Orientation::CW;
  return !(has_ccw && has_cw);
}

}  // namespace detail

// Triangle spanned by p and the two cell corners in direction dir.
inline bool in_direction_triangle(const PointSet& ps, const GridContext& g, CellIndex cell,
                                  int p, Dir dir, const Point& probe) {
  const auto corners = detail::side_corner_points(g, cell, dir);
  return detail::in_closed_triangle(probe, ps[p], corners[0], corners[1]);
}

struct SEndpointAssignment {
  Dir dir;
  int point;
  bool from_base_branch;  // assigned where every direction had a distinct extreme
};

namespace detail {

inline std::vector<SEndpointAssignment> pick_endpoints_rec(const PointSet& ps,
                                                           const GridContext& g, CellIndex cell,
                                                           std::vector<int> candidates,
                                                           std::vector<Dir> dirs) {
  const std::size_t k = dirs.size();
  std::vector<int> ext(k);
  for (std::size_t i = 0; i < k; ++i) ext[i] = extreme_point(ps, candidates, dirs[i]);

  // Base branch: every direction has its own extreme point.
  std::size_t coincide_i = k, coincide_j = k;
  for (std::size_t i = 0; i < k && coincide_i == k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (ext[i] == ext[j]) {
        coincide_i = i;
        coincide_j = j;
        break;
      }
    }
  }
  if (coincide_i == k) {
    std::vector<SEndpointAssignment> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back({dirs[i], ext[i], true});
    return out;
  }

  // p is extreme in (at least) two directions; recurse without dir_i first,
  // and flip to dir_j when p lands inside the chosen point's triangle.
  const int p = ext[coincide_i];
  const Dir dir_i = dirs[coincide_i];
  const Dir dir_j = dirs[coincide_j];
  std::vector<int> rest;
  rest.reserve(candidates.size() - 1);
  for (int pid : candidates) {
    if (pid != p) rest.push_back(pid);
  }

  std::vector<Dir> without_i = dirs;
  without_i.erase(without_i.begin() + static_cast<std::ptrdiff_t>(coincide_i));
  std::vector<SEndpointAssignment> sub = pick_endpoints_rec(ps, g, cell, rest, without_i);
  const auto assigned_j =
      std::find_if(sub.begin(), sub.end(), [&](const auto& a) { return a.dir == dir_j; });
  if (!in_direction_triangle(ps, g, cell, assigned_j->point, dir_j, ps[p])) {
    sub.push_back({dir_i, p, false});
    return sub;
  }
  std::vector<Dir> without_j = dirs;
  without_j.erase(without_j.begin() + static_cast<std::ptrdiff_t>(coincide_j));
  sub = pick_endpoints_rec(ps, g, cell, rest, without_j);
  sub.push_back({dir_j, p, false});
  return sub;
}

}  // namespace detail

// Chooses one endpoint per s-edge direction of a cell. With one direction
// this is the extreme point; with several, the recursive procedure assigns
// extreme points so that the spanned direction triangles stay empty.
inline std::vector<SEndpointAssignment> pick_s_endpoints(const PointSet& ps, const GridContext& g,
                                                         CellIndex cell, std::vector<Dir> dirs,
                                                         std::vector<int> candidates) {
  if (dirs.empty() || dirs.size() > 4) {
    throw InputError("pick_s_endpoints needs between 1 and 4 directions");
  }
  if (candidates.size() < dirs.size()) {
    throw NotEnoughPoints("cell holds " + std::to_string(candidates.size()) +
                          " candidates for " + std::to_string(dirs.size()) + " s-edges");
  }
  std::sort(dirs.begin(), dirs.end());  // fixed up, down, left, right order
  if (std::adjacent_find(dirs.begin(), dirs.end()) != dirs.end()) {
    throw InputError("pick_s_endpoints directions must be distinct");
  }
  auto out = detail::pick_endpoints_rec(ps, g, cell, std::move(candidates), std::move(dirs));
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.dir < b.dir; });
  return out;
}

// Sort by (x, then y) and pair consecutive points. The resulting edges are
// pairwise disjoint.
inline std::vector<std::pair<int, int>> internal_match(const PointSet& ps,
                                                       std::vector<int> pts) {
  if (pts.size() % 2 != 0) {
    throw OddCount("internal_match needs an even number of points, got " +
                   std::to_string(pts.size()));
  }
  std::sort(pts.begin(), pts.end(), [&](int a, int b) { return ps[a] < ps[b]; });
  std::vector<std::pair<int, int>> edges;
  edges.reserve(pts.size() / 2);
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
    edges.emplace_back(pts[i], pts[i + 1]);
  }
  return edges;
}

// One chosen external endpoint of a cell, for the free-region construction.
struct ChosenEndpoint {
  int point = 0;
  bool is_d = false;
  Dir dir = Dir::Up;      // s-endpoints
  Point corner;           // d-endpoints: the associated cell corner
};

// Half-plane nx*x + ny*y < bound (strict).
struct HalfPlane {
  double nx = 0.0;
  double ny = 0.0;
  double bound = 0.0;
};

// Convex region: the open cell clipped by one half-plane per chosen external
// endpoint, each cutting away the side its edge leaves through.
struct FreeRegion {
  Point lo, hi;  // cell bounds
  std::vector<HalfPlane> planes;

  bool contains_interior(const Point& p) const {
    if (!(p.x > lo.x && p.x < hi.x && p.y > lo.y && p.y < hi.y)) return false;
    for (const HalfPlane& h : planes) {
      if (!(h.nx * p.x + h.ny * p.y < h.bound)) return false;
    }
    return true;
  }
};

inline FreeRegion free_region(const GridContext& g, CellIndex cell,
                              const std::vector<ChosenEndpoint>& chosen) {
  FreeRegion r;
  const auto [lo, hi] = g.cell_bounds(cell);
  r.lo = lo;
  r.hi = hi;
  const Point center{(lo.x + hi.x) / 2.0, (lo.y + hi.y) / 2.0};
  for (const ChosenEndpoint& c : chosen) {
    const Point p = g.point_set()[c.point];
    HalfPlane h;
    if (c.is_d) {
      // Line through the endpoint parallel to the diagonal that faces the
      // corner; keep the side away from the corner.
      h.nx = c.corner.x > center.x ? 1.0 : -1.0;
      h.ny = c.corner.y > center.y ? 1.0 : -1.0;
    } else {
      switch (c.dir) {
        case Dir::Up: h = {0.0, 1.0, 0.0}; break;
        case Dir::Down: h = {0.0, -1.0, 0.0}; break;
        case Dir::Left: h = {-1.0, 0.0, 0.0}; break;
        case Dir::Right: h = {1.0, 0.0, 0.0}; break;
      }
    }
    h.bound = h.nx * p.x + h.ny * p.y;
    r.planes.push_back(h);
  }
  return r;
}

}  // namespace bncm
