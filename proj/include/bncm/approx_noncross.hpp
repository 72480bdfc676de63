#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bncm/errors.hpp"
#include "bncm/grid.hpp"
#include "bncm/matching.hpp"
#include "bncm/reduce_rules.hpp"
#include "bncm/stage2.hpp"

namespace bncm {

struct ConvertResult {
  Matching matching;      // the non-crossing output
  Matching intermediate;  // the reduced template matching
  RuleStats stats;
  GridContext grid;  // references the input point set
  double delta = 0.0;
  double delta2 = 0.0;
};

// Converts any perfect matching of ps into a non-crossing perfect matching
// whose bottleneck is at most 2*sqrt(10) times the input's. Three phases:
// lay a grid of side 2*sqrt(2)*delta, rewrite the matching cell-locally until
// the six structural properties hold, then rebuild: per cell choose external
// endpoints (d-edges first, then s-edges, then pair the rest left to right)
// and reconnect cells one external edge per template edge.
inline ConvertResult convert_detailed(const PointSet& ps, const Matching& m_cross) {
  if (!is_perfect(m_cross, ps)) {
    throw InputError("convert requires a perfect matching of the point set");
  }
  const double delta2 = bottleneck2(m_cross, ps);
  const double delta = std::sqrt(delta2);
  if (!(delta > 0.0)) {
    throw DegenerateDelta("matched points coincide; bottleneck is zero");
  }

  GridContext grid(ps, delta);
  ReduceResult reduced = reduce_rules(ps, m_cross, grid);

  struct CellPlan {
    std::vector<CornerIndex> d_corners;
    std::vector<Dir> s_dirs;
  };
  std::map<CellIndex, CellPlan> plan;
  for (const auto& [i, j] : reduced.matching.pairs()) {
    const ClassifiedEdge e = classify(i, j, grid);
    if (e.kind == EdgeKind::DEdge) {
      plan[e.cell_i].d_corners.push_back(e.corner);
      plan[e.cell_j].d_corners.push_back(e.corner);
    } else if (e.kind == EdgeKind::SEdge) {
      plan[e.cell_i].s_dirs.push_back(dir_between(e.cell_i, e.cell_j));
      plan[e.cell_j].s_dirs.push_back(dir_between(e.cell_j, e.cell_i));
    }
  }

  std::map<std::pair<CellIndex, CornerIndex>, int> d_pick;
  std::map<std::pair<CellIndex, int>, int> s_pick;
  std::vector<std::pair<int, int>> out_edges;
  out_edges.reserve(static_cast<std::size_t>(ps.size() / 2));

  const double d_reach = grid.zone_radius() * (1.0 + 1e-9);
  for (const CellIndex cell : grid.nonempty_cells()) {
    const std::vector<int>& cell_points = grid.points_in_cell(cell);
    std::vector<char> taken(cell_points.size(), 0);
    auto take = [&](int pid) {
      for (std::size_t k = 0; k < cell_points.size(); ++k) {
        if (cell_points[k] == pid) {
          if (taken[k]) {
            throw InvariantError("external endpoint chosen twice in one cell");
          }
          taken[k] = 1;
          return;
        }
      }
      throw InvariantError("chosen endpoint is not a point of its cell");
    };

    auto it = plan.find(cell);
    if (it != plan.end()) {
      CellPlan& cp = it->second;
      std::sort(cp.d_corners.begin(), cp.d_corners.end());
      for (const CornerIndex corner : cp.d_corners) {
        const Point a = grid.corner_point(corner);
        const int pid = pick_d_endpoint(ps, a, cell_points);
        if (l1_dist(ps[pid], a) > d_reach) {
          throw InvariantError("chosen d-endpoint lies outside the corner square");
        }
        take(pid);
        d_pick[{cell, corner}] = pid;
      }
      if (!cp.s_dirs.empty()) {
        std::vector<int> candidates;
        candidates.reserve(cell_points.size());
        for (std::size_t k = 0; k < cell_points.size(); ++k) {
          if (!taken[k]) candidates.push_back(cell_points[k]);
        }
        for (const SEndpointAssignment& a :
             pick_s_endpoints(ps, grid, cell, cp.s_dirs, std::move(candidates))) {
          take(a.point);
          s_pick[{cell, static_cast<int>(a.dir)}] = a.point;
        }
      }
    }

    std::vector<int> internal_pts;
    internal_pts.reserve(cell_points.size());
    for (std::size_t k = 0; k < cell_points.size(); ++k) {
      if (!taken[k]) internal_pts.push_back(cell_points[k]);
    }
    for (const auto& e : internal_match(ps, std::move(internal_pts))) {
      out_edges.push_back(e);
    }
  }

  for (const auto& [i, j] : reduced.matching.pairs()) {
    const ClassifiedEdge e = classify(i, j, grid);
    if (e.kind == EdgeKind::Internal) continue;
    int p, q;
    if (e.kind == EdgeKind::SEdge) {
      p = s_pick.at({e.cell_i, static_cast<int>(dir_between(e.cell_i, e.cell_j))});
      q = s_pick.at({e.cell_j, static_cast<int>(dir_between(e.cell_j, e.cell_i))});
    } else {
      p = d_pick.at({e.cell_i, e.corner});
      q = d_pick.at({e.cell_j, e.corner});
    }
    out_edges.emplace_back(p, q);
  }

  ConvertResult result{Matching(std::move(out_edges)), std::move(reduced.matching),
                       reduced.stats, std::move(grid), delta, delta2};
  if (!is_perfect(result.matching, ps)) {
    throw InvariantError("conversion lost perfectness");
  }
  return result;
}

inline Matching convert(const PointSet& ps, const Matching& m_cross) {
  return convert_detailed(ps, m_cross).matching;
}

}  // namespace bncm
