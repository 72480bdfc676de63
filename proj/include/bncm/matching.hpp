#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bncm/errors.hpp"
#include "bncm/geometry.hpp"

namespace bncm {

// An indexed set of pairwise-distinct finite points.
class PointSet {
 public:
  PointSet() = default;

  explicit PointSet(std::vector<Point> pts) : pts_(std::move(pts)) {
    for (const Point& p : pts_) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw ParseError("point coordinates must be finite");
      }
    }
    std::vector<Point> sorted = pts_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i] == sorted[i - 1]) {
        throw DuplicatePoints("input contains coincident points (" +
                              std::to_string(sorted[i].x) + ", " + std::to_string(sorted[i].y) +
                              ")");
      }
    }
  }

  int size() const { return static_cast<int>(pts_.size()); }
  const Point& operator[](int i) const { return pts_[static_cast<std::size_t>(i)]; }
  const std::vector<Point>& points() const { return pts_; }

  void require_even(const std::string& context) const {
    if (pts_.size() < 2 || pts_.size() % 2 != 0) {
      throw OddCardinality(context + " needs an even number (>= 2) of points, got " +
                           std::to_string(pts_.size()));
    }
  }

 private:
  std::vector<Point> pts_;
};

// A set of unordered, pairwise-disjoint index pairs. Stored canonically:
// each pair as (lo, hi), pairs sorted ascending.
class Matching {
 public:
  Matching() = default;

  explicit Matching(std::vector<std::pair<int, int>> pairs) : pairs_(std::move(pairs)) {
    for (auto& [a, b] : pairs_) {
      if (a == b) throw InvariantError("matching pair with equal endpoints");
      if (a > b) std::swap(a, b);
    }
    std::sort(pairs_.begin(), pairs_.end());
  }

  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  bool empty() const { return pairs_.empty(); }

  friend bool operator==(const Matching& a, const Matching& b) { return a.pairs_ == b.pairs_; }

  // Partner array of length n; -1 for uncovered indices.
  // Throws if an index is out of range or covered twice.
  std::vector<int> to_mates(int n) const {
    std::vector<int> mate(static_cast<std::size_t>(n), -1);
    for (const auto& [a, b] : pairs_) {
      if (a < 0 || b >= n) {
        throw IndexOutOfRange("matching refers to point " + std::to_string(b) + " of " +
                              std::to_string(n));
      }
      if (mate[static_cast<std::size_t>(a)] != -1 || mate[static_cast<std::size_t>(b)] != -1) {
        throw InvariantError("matching covers an index twice");
      }
      mate[static_cast<std::size_t>(a)] = b;
      mate[static_cast<std::size_t>(b)] = a;
    }
    return mate;
  }

 private:
  std::vector<std::pair<int, int>> pairs_;
};

// Squared bottleneck: max squared edge length. All internal comparisons in the
// library happen on this value; square roots only appear in reports.
inline double bottleneck2(const Matching& m, const PointSet& ps) {
  if (m.empty()) throw EmptyMatching("bottleneck of an empty matching is undefined");
  double best = 0.0;
  for (const auto& [a, b] : m.pairs()) {
    if (a < 0 || b >= ps.size()) {
      throw IndexOutOfRange("edge (" + std::to_string(a) + "," + std::to_string(b) +
                            ") out of range for " + std::to_string(ps.size()) + " points");
    }
    best = std::max(best, dist2(ps[a], ps[b]));
  }
  return best;
}

inline double bottleneck(const Matching& m, const PointSet& ps) {
  return std::sqrt(bottleneck2(m, ps));
}

inline bool is_perfect(const Matching& m, const PointSet& ps) {
  std::vector<int> cover(static_cast<std::size_t>(ps.size()), 0);
  for (const auto& [a, b] : m.pairs()) {
    if (a < 0 || b >= ps.size()) {
      throw IndexOutOfRange("edge (" + std::to_string(a) + "," + std::to_string(b) +
                            ") out of range for " + std::to_string(ps.size()) + " points");
    }
    ++cover[static_cast<std::size_t>(a)];
    ++cover[static_cast<std::size_t>(b)];
  }
  return std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; });
}

// Pairwise closed-segment disjointness over all edge pairs; O(m^2).
inline bool is_noncrossing(const Matching& m, const PointSet& ps) {
  const auto& pairs = m.pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Segment si{ps[pairs[i].first], ps[pairs[i].second]};
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const Segment sj{ps[pairs[j].first], ps[pairs[j].second]};
      if (!segments_disjoint(si, sj)) return false;
    }
  }
  return true;
}

}  // namespace bncm
