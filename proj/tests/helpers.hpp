#pragma once

// Shared fixtures and independent reference implementations for the tests.
// Everything here deliberately avoids the library's own code paths where it
// serves as an oracle.

#include <algorithm>
#include <utility>
#include <vector>

#include "bncm/matching.hpp"
#include "bncm/rng.hpp"

namespace test_support {

inline bncm::PointSet points(std::initializer_list<bncm::Point> pts) {
  return bncm::PointSet(std::vector<bncm::Point>(pts));
}

inline bncm::Matching pairs(std::initializer_list<std::pair<int, int>> ps) {
  return bncm::Matching(std::vector<std::pair<int, int>>(ps));
}

// Exhaustive maximum matching of a small graph by recursion over vertices.
inline int brute_force_max_matching(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int v) -> int {
    while (v < n && used[static_cast<std::size_t>(v)]) ++v;
    if (v >= n) return 0;
    used[static_cast<std::size_t>(v)] = 1;
    int best = self(self, v + 1);  // leave v unmatched
    for (int to : adj[static_cast<std::size_t>(v)]) {
      if (used[static_cast<std::size_t>(to)]) continue;
      used[static_cast<std::size_t>(to)] = 1;
      best = std::max(best, 1 + self(self, v + 1));
      used[static_cast<std::size_t>(to)] = 0;
    }
    used[static_cast<std::size_t>(v)] = 0;
    return best;
  };
  return rec(rec, 0);
}

// Independent closed-segment intersection test: solve the parametric 2x2
// system and check both parameters lie in [0,1]; parallel segments fall back
// to collinearity plus interval overlap.
inline bool naive_segments_intersect(const bncm::Point& a, const bncm::Point& b,
                                     const bncm::Point& c, const bncm::Point& d) {
  const double rx = b.x - a.x, ry = b.y - a.y;
  const double sx = d.x - c.x, sy = d.y - c.y;
  const double denom = rx * sy - ry * sx;
  const double qpx = c.x - a.x, qpy = c.y - a.y;
  if (denom != 0.0) {
    const double t = (qpx * sy - qpy * sx) / denom;
    const double u = (qpx * ry - qpy * rx) / denom;
    return t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0;
  }
  if (qpx * ry - qpy * rx != 0.0) return false;  // parallel, different lines
  // Collinear: overlap of parameter intervals along the dominant axis.
  const bool use_x = std::abs(rx) >= std::abs(ry);
  const double a0 = use_x ? a.x : a.y, a1 = use_x ? b.x : b.y;
  const double c0 = use_x ? c.x : c.y, c1 = use_x ? d.x : d.y;
  return std::max(std::min(a0, a1), std::min(c0, c1)) <=
         std::min(std::max(a0, a1), std::max(c0, c1));
}

}  // namespace test_support
