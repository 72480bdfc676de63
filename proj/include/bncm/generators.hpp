#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bncm/convex_dp.hpp"
#include "bncm/errors.hpp"
#include "bncm/matching.hpp"
#include "bncm/rng.hpp"

namespace bncm {

enum class InstanceKind { Uniform, Convex, Circle, Clustered };

inline const char* kind_name(InstanceKind k) {
  switch (k) {
    case InstanceKind::Uniform: return "uniform";
    case InstanceKind::Convex: return "convex";
    case InstanceKind::Circle: return "circle";
    case InstanceKind::Clustered: return "clustered";
  }
  return "?";
}

inline InstanceKind kind_from_name(const std::string& s) {
  if (s == "uniform") return InstanceKind::Uniform;
  if (s == "convex") return InstanceKind::Convex;
  if (s == "circle") return InstanceKind::Circle;
  if (s == "clustered") return InstanceKind::Clustered;
  throw InputError("unknown instance kind '" + s + "'");
}

struct InstanceSpec {
  InstanceKind kind = InstanceKind::Uniform;
  int pairs = 1;
  std::uint64_t seed = 0;
  double scale = 1.0;
};

namespace detail {

// Strictly increasing angles with a guaranteed gap, so curve samples are
// never collinear to within double rounding.
inline std::vector<double> stratified_angles(int count, Rng& rng) {
  std::vector<double> angles(static_cast<std::size_t>(count));
  const double tau = 6.283185307179586;
  for (int i = 0; i < count; ++i) {
    angles[static_cast<std::size_t>(i)] =
        tau * (static_cast<double>(i) + 0.1 + 0.8 * rng.uniform01()) / static_cast<double>(count);
  }
  return angles;
}

inline std::vector<Point> distinct_points(int count, Rng& rng,
                                          const std::function<Point(Rng&)>& draw) {
  std::set<std::pair<double, double>> seen;
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(pts.size()) < count) {
    const Point p = draw(rng);
    if (seen.insert({p.x, p.y}).second) pts.push_back(p);
  }
  return pts;
}

}  // namespace detail

// Deterministic: the same spec always yields the same points.
inline PointSet generate_instance(const InstanceSpec& spec) {
  if (spec.pairs < 1) throw InputError("instance needs at least one pair of points");
  if (!(spec.scale > 0.0)) throw InputError("instance scale must be positive");
  const int n = 2 * spec.pairs;
  Rng rng(spec.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(spec.kind) + 1);

  switch (spec.kind) {
    case InstanceKind::Uniform: {
      auto draw = [&](Rng& r) {
        return Point{r.uniform(0.0, spec.scale), r.uniform(0.0, spec.scale)};
      };
      return PointSet(detail::distinct_points(n, rng, draw));
    }
    case InstanceKind::Circle: {
      const double r = 0.5 * spec.scale;
      const Point c{0.5 * spec.scale, 0.5 * spec.scale};
      std::vector<Point> pts;
      pts.reserve(static_cast<std::size_t>(n));
      for (double a : detail::stratified_angles(n, rng)) {
        pts.push_back(Point{c.x + r * std::cos(a), c.y + r * std::sin(a)});
      }
      return PointSet(std::move(pts));
    }
    case InstanceKind::Convex: {
      // Jittered samples of a strictly convex curve (an ellipse); retry with
      // a new salt in the vanishingly unlikely event rounding flattens a
      // hull turn.
      for (std::uint64_t salt = 0; salt < 64; ++salt) {
        Rng r2(spec.seed * 0x9e3779b97f4a7c15ULL + salt * 0xbf58476d1ce4e5b9ULL + 7);
        const double ax = 0.48 * spec.scale;
        const double by = 0.31 * spec.scale;
        const Point c{0.5 * spec.scale, 0.5 * spec.scale};
        std::vector<Point> pts;
        pts.reserve(static_cast<std::size_t>(n));
        for (double a : detail::stratified_angles(n, r2)) {
          pts.push_back(Point{c.x + ax * std::cos(a), c.y + by * std::sin(a)});
        }
        try {
          PointSet ps(std::move(pts));
          check_convex_order(ps);
          return ps;
        } catch (const InputError&) {
          continue;
        }
      }
      throw InvariantError("convex instance generation failed to converge");
    }
    case InstanceKind::Clustered: {
      const int blobs = std::max(2, std::min(8, n / 8));
      std::vector<Point> centers;
      centers.reserve(static_cast<std::size_t>(blobs));
      for (int b = 0; b < blobs; ++b) {
        centers.push_back(Point{rng.uniform(0.15 * spec.scale, 0.85 * spec.scale),
                                rng.uniform(0.15 * spec.scale, 0.85 * spec.scale)});
      }
      const double sigma = 0.03 * spec.scale;
      auto draw = [&](Rng& r) {
        const Point c = centers[static_cast<std::size_t>(r.uniform_int(0, blobs - 1))];
        return Point{r.normal(c.x, sigma), r.normal(c.y, sigma)};
      };
      return PointSet(detail::distinct_points(n, rng, draw));
    }
  }
  throw InputError("unknown instance kind");
}

}  // namespace bncm
