#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "bncm/errors.hpp"
#include "bncm/geometry.hpp"
#include "bncm/matching.hpp"

namespace bncm {

namespace detail {

// Strict convex hull (collinear boundary points excluded), counter-clockwise,
// starting at the lexicographically least point. Andrew's monotone chain.
inline std::vector<int> convex_hull_ccw(const PointSet& ps) {
  const int n = ps.size();
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return ps[a] < ps[b]; });
  if (n <= 2) return idx;

  std::vector<int> hull(2 * static_cast<std::size_t>(n));
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {  // lower
    const int p = idx[static_cast<std::size_t>(i)];
    while (k >= 2 && orientation(ps[hull[k - 2]], ps[hull[k - 1]], ps[p]) != Orientation::CCW) {
      --k;
    }
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (int i = n - 2; i >= 0; --i) {  // upper
    const int p = idx[static_cast<std::size_t>(i)];
    while (k >= lower && orientation(ps[hull[k - 2]], ps[hull[k - 1]], ps[p]) != Orientation::CCW) {
      --k;
    }
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace detail

// Points in strict convex position, in clockwise order with the
// lexicographically least point first.
struct ConvexInstance {
  const PointSet* ps = nullptr;
  std::vector<int> order;
};

inline ConvexInstance check_convex_order(const PointSet& ps) {
  if (ps.size() < 2) {
    throw InputError("convex ordering needs at least 2 points");
  }
  std::vector<int> hull = detail::convex_hull_ccw(ps);
  if (static_cast<int>(hull.size()) != ps.size()) {
    throw NotConvexPosition(std::to_string(ps.size() - static_cast<int>(hull.size())) +
                            " point(s) are not convex hull vertices");
  }
  // CCW starting at the lex-least point; reverse the tail for clockwise.
  std::reverse(hull.begin() + 1, hull.end());
  return ConvexInstance{&ps, std::move(hull)};
}

// Squared length of the chord between order positions i < j when i+j is odd,
// infinity otherwise. An edge of an optimal non-crossing matching always
// splits the boundary into two even-size arcs, which forces odd i+j.
inline double convex_weight2(const ConvexInstance& inst, int i, int j) {
  if ((i + j) % 2 == 0) return std::numeric_limits<double>::infinity();
  const PointSet& ps = *inst.ps;
  return dist2(ps[inst.order[static_cast<std::size_t>(i)]],
               ps[inst.order[static_cast<std::size_t>(j)]]);
}

struct ConvexResult {
  Matching matching;
  double bottleneck2 = 0.0;
  double bottleneck = 0.0;
};

// Interval dynamic program over the boundary order: best[i][j] is the optimal
// bottleneck for matching positions i..j among themselves. Filled by
// increasing interval length, O(n^3) time, O(n^2) space.
inline ConvexResult solve_convex(const ConvexInstance& inst) {
  const PointSet& ps = *inst.ps;
  ps.require_even("solve_convex");
  const int n = ps.size();
  const std::size_t stride = static_cast<std::size_t>(n);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(stride * stride, inf);
  std::vector<int> choice(stride * stride, -1);
  std::vector<char> computed(stride * stride, 0);

  auto at = [stride](int i, int j) { return static_cast<std::size_t>(i) * stride +
                                            static_cast<std::size_t>(j); };
  auto lookup = [&](int i, int j) {
    if (!computed[at(i, j)]) {
      throw InvariantError("convex DP consulted an unfilled table entry");
    }
    return best[at(i, j)];
  };

  for (int gap = 1; gap < n; gap += 2) {
    for (int i = 0; i + gap < n; ++i) {
      const int j = i + gap;
      double value = inf;
      int arg = -1;
      for (int k = i + 1; k <= j; k += 2) {
        const double w = convex_weight2(inst, i, k);
        double cand = w;
        if (k + 1 <= j) cand = std::max(cand, lookup(k + 1, j));
        if (i + 1 <= k - 1) cand = std::max(cand, lookup(i + 1, k - 1));
        if (cand < value) {
          value = cand;
          arg = k;
        }
      }
      best[at(i, j)] = value;
      choice[at(i, j)] = arg;
      computed[at(i, j)] = 1;
    }
  }

  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n / 2));
  std::vector<std::pair<int, int>> stack{{0, n - 1}};
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    if (i >= j) continue;
    const int k = choice[at(i, j)];
    edges.emplace_back(inst.order[static_cast<std::size_t>(i)],
                       inst.order[static_cast<std::size_t>(k)]);
    if (i + 1 <= k - 1) stack.emplace_back(i + 1, k - 1);
    if (k + 1 <= j) stack.emplace_back(k + 1, j);
  }

  ConvexResult result;
  result.matching = Matching(std::move(edges));
  result.bottleneck2 = best[at(0, n - 1)];
  result.bottleneck = std::sqrt(result.bottleneck2);
  return result;
}

inline ConvexResult solve_convex(const PointSet& ps) { return solve_convex(check_convex_order(ps)); }

}  // namespace bncm
