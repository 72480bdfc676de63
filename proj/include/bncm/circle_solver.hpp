#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "bncm/convex_dp.hpp"
#include "bncm/errors.hpp"
#include "bncm/geometry.hpp"
#include "bncm/matching.hpp"

namespace bncm {

// Points on a common circle, in clockwise angular order starting at the
// lexicographically least point.
struct CircularInstance {
  const PointSet* ps = nullptr;
  Point center;
  double radius = 0.0;
  std::vector<int> order;
};

namespace detail {

inline bool circumcenter(const Point& a, const Point& b, const Point& c, Point& out) {
  const double d = 2.0 * ((a.x - c.x) * (b.y - c.y) - (a.y - c.y) * (b.x - c.x));
  if (d == 0.0 || !std::isfinite(d)) return false;
  const double a2 = a.x * a.x + a.y * a.y;
  const double b2 = b.x * b.x + b.y * b.y;
  const double c2 = c.x * c.x + c.y * c.y;
  out.x = ((a2 - c2) * (b.y - c.y) - (b2 - c2) * (a.y - c.y)) / d;
  out.y = ((b2 - c2) * (a.x - c.x) - (a2 - c2) * (b.x - c.x)) / d;
  return std::isfinite(out.x) && std::isfinite(out.y);
}

}  // namespace detail

// Fits the circle through three spread-out hull vertices and validates that
// every point sits on it within relative tolerance 1e-6 of the radius.
inline CircularInstance angular_order(const PointSet& ps) {
  if (ps.size() < 2) {
    throw InputError("angular ordering needs at least 2 points");
  }
  CircularInstance inst;
  inst.ps = &ps;

  if (ps.size() == 2) {
    inst.center = Point{(ps[0].x + ps[1].x) / 2.0, (ps[0].y + ps[1].y) / 2.0};
    inst.radius = std::sqrt(dist2(ps[0], inst.center));
    inst.order = ps[0] < ps[1] ? std::vector<int>{0, 1} : std::vector<int>{1, 0};
    return inst;
  }

  // Cocircular points are in strict convex position; the hull check doubles
  // as a cheap pre-filter.
  std::vector<int> hull = detail::convex_hull_ccw(ps);
  if (static_cast<int>(hull.size()) != ps.size()) {
    throw NotCocircular("some points are not convex hull vertices");
  }
  const std::size_t m = hull.size();
  if (!detail::circumcenter(ps[hull[0]], ps[hull[m / 3]], ps[hull[(2 * m) / 3]], inst.center)) {
    throw NotCocircular("degenerate circumcircle fit");
  }

  double radius_sum = 0.0;
  std::vector<double> radii(static_cast<std::size_t>(ps.size()));
  for (int i = 0; i < ps.size(); ++i) {
    radii[static_cast<std::size_t>(i)] = std::sqrt(dist2(ps[i], inst.center));
    radius_sum += radii[static_cast<std::size_t>(i)];
  }
  inst.radius = radius_sum / static_cast<double>(ps.size());
  if (!(inst.radius > 0.0)) throw NotCocircular("zero fitted radius");
  for (int i = 0; i < ps.size(); ++i) {
    if (std::abs(radii[static_cast<std::size_t>(i)] - inst.radius) > 1e-6 * inst.radius) {
      throw NotCocircular("point " + std::to_string(i) + " deviates from the fitted circle");
    }
  }

  inst.order.resize(static_cast<std::size_t>(ps.size()));
  for (int i = 0; i < ps.size(); ++i) inst.order[static_cast<std::size_t>(i)] = i;
  std::sort(inst.order.begin(), inst.order.end(), [&](int a, int b) {
    return std::atan2(ps[a].y - inst.center.y, ps[a].x - inst.center.x) >
           std::atan2(ps[b].y - inst.center.y, ps[b].x - inst.center.x);
  });
  int least = 0;
  for (int i = 1; i < ps.size(); ++i) {
    if (ps[inst.order[static_cast<std::size_t>(i)]] <
        ps[inst.order[static_cast<std::size_t>(least)]]) {
      least = i;
    }
  }
  std::rotate(inst.order.begin(), inst.order.begin() + least, inst.order.end());
  return inst;
}

struct CircleResult {
  Matching matching;
  double bottleneck2 = 0.0;
  double bottleneck = 0.0;
};

// Every edge of an optimal non-crossing matching on a circle joins two
// cyclically consecutive points, so only the two consecutive pairings exist;
// evaluate both, keep the better.
inline CircleResult solve_circle(const CircularInstance& inst) {
  const PointSet& ps = *inst.ps;
  ps.require_even("solve_circle");
  const int n = ps.size();

  auto pairing = [&](int offset) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(n / 2));
    for (int i = 0; i < n; i += 2) {
      edges.emplace_back(inst.order[static_cast<std::size_t>((i + offset) % n)],
                         inst.order[static_cast<std::size_t>((i + 1 + offset) % n)]);
    }
    return Matching(std::move(edges));
  };

  const Matching even = pairing(0);
  const Matching odd = pairing(1);
  const double bn_even = bottleneck2(even, ps);
  const double bn_odd = bottleneck2(odd, ps);

  CircleResult result;
  if (bn_even < bn_odd || (bn_even == bn_odd && even.pairs() <= odd.pairs())) {
    result.matching = even;
    result.bottleneck2 = bn_even;
  } else {
    result.matching = odd;
    result.bottleneck2 = bn_odd;
  }
  result.bottleneck = std::sqrt(result.bottleneck2);
  return result;
}

inline CircleResult solve_circle(const PointSet& ps) { return solve_circle(angular_order(ps)); }

}  // namespace bncm
