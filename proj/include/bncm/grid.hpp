#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bncm/errors.hpp"
#include "bncm/matching.hpp"

namespace bncm {

struct CellIndex {
  std::int64_t ix = 0;
  std::int64_t iy = 0;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

// A lattice vertex of the grid (a cell corner).
struct CornerIndex {
  std::int64_t cx = 0;
  std::int64_t cy = 0;

  friend bool operator==(const CornerIndex&, const CornerIndex&) = default;
  friend auto operator<=>(const CornerIndex&, const CornerIndex&) = default;
};

namespace detail {

inline std::size_t mix_hash(std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = a * 0x9e3779b97f4a7c15ULL;
  h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

}  // namespace detail

struct CellIndexHash {
  std::size_t operator()(const CellIndex& c) const {
    return detail::mix_hash(static_cast<std::uint64_t>(c.ix), static_cast<std::uint64_t>(c.iy));
  }
};

struct CornerIndexHash {
  std::size_t operator()(const CornerIndex& c) const {
    return detail::mix_hash(static_cast<std::uint64_t>(c.cx) + 0x51afd7ed558ccd25ULL,
                            static_cast<std::uint64_t>(c.cy));
  }
};

enum class EdgeKind { Internal, SEdge, DEdge };

enum class Dir : int { Up = 0, Down = 1, Left = 2, Right = 3 };

inline const char* dir_name(Dir d) {
  switch (d) {
    case Dir::Up: return "up";
    case Dir::Down: return "down";
    case Dir::Left: return "left";
    case Dir::Right: return "right";
  }
  return "?";
}

inline Dir opposite(Dir d) {
  switch (d) {
    case Dir::Up: return Dir::Down;
    case Dir::Down: return Dir::Up;
    case Dir::Left: return Dir::Right;
    case Dir::Right: return Dir::Left;
  }
  return Dir::Up;
}

struct ClassifiedEdge {
  int i = 0;
  int j = 0;
  EdgeKind kind = EdgeKind::Internal;
  CellIndex cell_i;
  CellIndex cell_j;
  CornerIndex corner;  // meaningful iff kind == DEdge
};

// The grid of side 2*sqrt(2)*delta laid over the point set, with the origin
// chosen so every point is strictly inside a half-open cell.
class GridContext {
 public:
  // Deterministic origin: start at (min - side/2) per axis, then shift both
  // axes by side/(2m+1), m = 1, 2, ... until every coordinate clears every
  // grid line by more than 1e-9 * side.
  GridContext(const PointSet& ps, double delta) : ps_(&ps) {
    init_side(delta);
    const auto& pts = ps.points();
    double min_x = pts.empty() ? 0.0 : pts[0].x;
    double min_y = pts.empty() ? 0.0 : pts[0].y;
    for (const Point& p : pts) {
      min_x = std::min(min_x, p.x);
      min_y = std::min(min_y, p.y);
    }
    const Point base{min_x - side_ / 2.0, min_y - side_ / 2.0};
    for (long m = 0;; ++m) {
      const double shift = m == 0 ? 0.0 : side_ / static_cast<double>(2 * m + 1);
      origin_ = Point{base.x - shift, base.y - shift};
      if (all_points_clear()) break;
      if (m > 1000000) {
        throw InvariantError("grid origin selection failed to clear all points");
      }
    }
    finish_init();
  }

  // Explicit origin; the caller is responsible for interiority.
  GridContext(const PointSet& ps, double delta, Point origin) : ps_(&ps), origin_(origin) {
    init_side(delta);
    finish_init();
  }

  double delta() const { return delta_; }
  double cell_side() const { return side_; }
  // l1 radius of a danger zone and half the l1 diameter of the corner square.
  double zone_radius() const { return zone_radius_; }
  Point origin() const { return origin_; }
  const PointSet& point_set() const { return *ps_; }

  CellIndex cell_of(int point_index) const {
    return cell_of_[static_cast<std::size_t>(point_index)];
  }

  CellIndex cell_at(const Point& p) const {
    return CellIndex{static_cast<std::int64_t>(std::floor((p.x - origin_.x) / side_)),
                     static_cast<std::int64_t>(std::floor((p.y - origin_.y) / side_))};
  }

  Point corner_point(CornerIndex c) const {
    return Point{origin_.x + static_cast<double>(c.cx) * side_,
                 origin_.y + static_cast<double>(c.cy) * side_};
  }

  // Low (SW) and high (NE) corner coordinates of a cell.
  std::pair<Point, Point> cell_bounds(CellIndex c) const {
    const Point lo{origin_.x + static_cast<double>(c.ix) * side_,
                   origin_.y + static_cast<double>(c.iy) * side_};
    return {lo, Point{lo.x + side_, lo.y + side_}};
  }

  std::array<CornerIndex, 4> cell_corners(CellIndex c) const {
    return {CornerIndex{c.ix, c.iy}, CornerIndex{c.ix + 1, c.iy}, CornerIndex{c.ix, c.iy + 1},
            CornerIndex{c.ix + 1, c.iy + 1}};
  }

  // The ll-nearest corner of p's cell if p lies within the open l1 ball of
  // radius zone_radius() around it. At most one corner can qualify; reduction
  // and verification share this definition so they can never disagree.
  std::optional<CornerIndex> zone_corner_at(const Point& p) const {
    const CellIndex c = cell_at(p);
    std::optional<CornerIndex> best;
    double best_d = 0.0;
    for (const CornerIndex corner : cell_corners(c)) {
      const double d = l1_dist(p, corner_point(corner));
      if (!best || d < best_d || (d == best_d && corner < *best)) {
        best = corner;
        best_d = d;
      }
    }
    if (best && best_d < zone_radius_) return best;
    return std::nullopt;
  }

  std::optional<CornerIndex> zone_corner_of(int point_index) const {
    return zone_corner_[static_cast<std::size_t>(point_index)];
  }

  const std::vector<int>& points_in_cell(CellIndex c) const {
    static const std::vector<int> empty;
    auto it = by_cell_.find(c);
    return it == by_cell_.end() ? empty : it->second;
  }

  // Non-empty cells in ascending (ix, iy) order.
  const std::vector<CellIndex>& nonempty_cells() const { return cells_sorted_; }

 private:
  void init_side(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
      throw DegenerateDelta("grid needs a positive finite delta, got " + std::to_string(delta));
    }
    delta_ = delta;
    side_ = 2.0 * std::sqrt(2.0) * delta;
    zone_radius_ = std::sqrt(2.0) * delta;
  }

  bool all_points_clear() const {
    const double clearance = 1e-9 * side_;
    for (const Point& p : ps_->points()) {
      for (double coord : {p.x - origin_.x, p.y - origin_.y}) {
        const double r = coord - std::floor(coord / side_) * side_;
        if (std::min(r, side_ - r) <= clearance) return false;
      }
    }
    return true;
  }

  void finish_init() {
    const int n = ps_->size();
    cell_of_.resize(static_cast<std::size_t>(n));
    zone_corner_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const CellIndex c = cell_at((*ps_)[i]);
      cell_of_[static_cast<std::size_t>(i)] = c;
      by_cell_[c].push_back(i);
      zone_corner_[static_cast<std::size_t>(i)] = zone_corner_at((*ps_)[i]);
    }
    cells_sorted_.reserve(by_cell_.size());
    for (const auto& [c, ids] : by_cell_) cells_sorted_.push_back(c);
    std::sort(cells_sorted_.begin(), cells_sorted_.end());
  }

  const PointSet* ps_ = nullptr;
  double delta_ = 0.0;
  double side_ = 0.0;
  double zone_radius_ = 0.0;
  Point origin_;
  std::vector<CellIndex> cell_of_;
  std::vector<std::optional<CornerIndex>> zone_corner_;
  std::unordered_map<CellIndex, std::vector<int>, CellIndexHash> by_cell_;
  std::vector<CellIndex> cells_sorted_;
};

inline GridContext build_grid(const PointSet& ps, double delta) { return GridContext(ps, delta); }

// Internal, side-sharing, or corner-sharing; anything else means the edge is
// longer than the grid construction permits.
inline ClassifiedEdge classify(int i, int j, const GridContext& g) {
  ClassifiedEdge e;
  e.i = i;
  e.j = j;
  e.cell_i = g.cell_of(i);
  e.cell_j = g.cell_of(j);
  const std::int64_t dx = std::abs(e.cell_i.ix - e.cell_j.ix);
  const std::int64_t dy = std::abs(e.cell_i.iy - e.cell_j.iy);
  if (dx == 0 && dy == 0) {
    e.kind = EdgeKind::Internal;
  } else if (dx + dy == 1) {
    e.kind = EdgeKind::SEdge;
  } else if (dx == 1 && dy == 1) {
    e.kind = EdgeKind::DEdge;
    e.corner = CornerIndex{std::max(e.cell_i.ix, e.cell_j.ix), std::max(e.cell_i.iy, e.cell_j.iy)};
  } else {
    throw NonAdjacentCells("edge (" + std::to_string(i) + "," + std::to_string(j) +
                           ") spans cells (" + std::to_string(e.cell_i.ix) + "," +
                           std::to_string(e.cell_i.iy) + ") and (" + std::to_string(e.cell_j.ix) +
                           "," + std::to_string(e.cell_j.iy) + ")");
  }
  return e;
}

// Direction of travel from cell `from` to side-adjacent cell `to`.
inline Dir dir_between(CellIndex from, CellIndex to) {
  if (to.ix == from.ix && to.iy == from.iy + 1) return Dir::Up;
  if (to.ix == from.ix && to.iy == from.iy - 1) return Dir::Down;
  if (to.ix == from.ix - 1 && to.iy == from.iy) return Dir::Left;
  if (to.ix == from.ix + 1 && to.iy == from.iy) return Dir::Right;
  throw InvariantError("dir_between: cells do not share a side");
}

inline CellIndex neighbor(CellIndex c, Dir d) {
  switch (d) {
    case Dir::Up: return CellIndex{c.ix, c.iy + 1};
    case Dir::Down: return CellIndex{c.ix, c.iy - 1};
    case Dir::Left: return CellIndex{c.ix - 1, c.iy};
    case Dir::Right: return CellIndex{c.ix + 1, c.iy};
  }
  return c;
}

// The four cells around a corner.
inline CellIndex corner_cell_sw(CornerIndex a) { return CellIndex{a.cx - 1, a.cy - 1}; }
inline CellIndex corner_cell_se(CornerIndex a) { return CellIndex{a.cx, a.cy - 1}; }
inline CellIndex corner_cell_nw(CornerIndex a) { return CellIndex{a.cx - 1, a.cy}; }
inline CellIndex corner_cell_ne(CornerIndex a) { return CellIndex{a.cx, a.cy}; }

// Diagonal pair through a corner: main = SW/NE, anti = SE/NW.
enum class DiagType : int { Main = 0, Anti = 1 };

inline DiagType diag_type_of(CellIndex c1, CellIndex c2) {
  // Equal-sign offsets (both +1 or both -1) mean SW/NE.
  return ((c1.ix - c2.ix) == (c1.iy - c2.iy)) ? DiagType::Main : DiagType::Anti;
}

inline std::pair<CellIndex, CellIndex> diag_cells(CornerIndex a, DiagType t) {
  if (t == DiagType::Main) return {corner_cell_sw(a), corner_cell_ne(a)};
  return {corner_cell_se(a), corner_cell_nw(a)};
}

// The two cells flanking a d-edge through corner a (the other diagonal pair).
inline std::pair<CellIndex, CellIndex> flank_cells(CornerIndex a, DiagType t) {
  return diag_cells(a, t == DiagType::Main ? DiagType::Anti : DiagType::Main);
}

// Semi-open triangular region at `corner` inside `cell`: l1 distance below
// zone_radius, hypotenuse excluded. Membership goes through the shared
// nearest-corner helper.
struct DangerZone {
  CornerIndex corner;
  CellIndex cell;

  bool contains(const Point& p, const GridContext& g) const {
    if (g.cell_at(p) != cell) return false;
    const auto zc = g.zone_corner_at(p);
    return zc && *zc == corner;
  }

  bool contains_index(int point_index, const GridContext& g) const {
    if (g.cell_of(point_index) != cell) return false;
    const auto zc = g.zone_corner_of(point_index);
    return zc && *zc == corner;
  }
};

inline std::array<DangerZone, 2> danger_zones(CornerIndex a, DiagType t) {
  const auto [f1, f2] = flank_cells(a, t);
  return {DangerZone{a, f1}, DangerZone{a, f2}};
}

}  // namespace bncm
