#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "bncm/blossom.hpp"
#include "bncm/errors.hpp"
#include "bncm/matching.hpp"

namespace bncm {

// All pairs whose squared length is at most threshold2.
struct ThresholdGraph {
  int n_vertices = 0;
  std::vector<std::pair<int, int>> edges;

  static ThresholdGraph build(const PointSet& ps, double threshold2) {
    ThresholdGraph g;
    g.n_vertices = ps.size();
    for (int i = 0; i < ps.size(); ++i) {
      for (int j = i + 1; j < ps.size(); ++j) {
        if (dist2(ps[i], ps[j]) <= threshold2) g.edges.emplace_back(i, j);
      }
    }
    return g;
  }
};

inline MaxMatchingResult max_matching_size(const ThresholdGraph& g) {
  return max_matching(g.n_vertices, g.edges);
}

// Sorted, deduplicated squared pairwise distances. The optimal bottleneck of
// any perfect matching is one of these.
inline std::vector<double> candidate_thresholds(const PointSet& ps) {
  std::vector<double> d2;
  d2.reserve(static_cast<std::size_t>(ps.size()) * (static_cast<std::size_t>(ps.size()) - 1) / 2);
  for (int i = 0; i < ps.size(); ++i) {
    for (int j = i + 1; j < ps.size(); ++j) {
      d2.push_back(dist2(ps[i], ps[j]));
    }
  }
  std::sort(d2.begin(), d2.end());
  d2.erase(std::unique(d2.begin(), d2.end()), d2.end());
  return d2;
}

struct BottleneckResult {
  Matching matching;
  double bottleneck2 = 0.0;
  double bottleneck = 0.0;
};

// Exact minimum-bottleneck perfect matching, crossings allowed. Binary search
// over the candidate squared distances; each probe asks the blossom matcher
// whether the threshold graph has a perfect matching.
inline BottleneckResult solve_bottleneck(const PointSet& ps) {
  ps.require_even("solve_bottleneck");
  const int n_pairs = ps.size() / 2;
  const std::vector<double> cands = candidate_thresholds(ps);

  auto probe = [&](double t2) { return max_matching_size(ThresholdGraph::build(ps, t2)); };

  std::size_t lo = 0;
  std::size_t hi = cands.size() - 1;
  MaxMatchingResult witness;
  std::size_t witness_at = cands.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    MaxMatchingResult r = probe(cands[mid]);
    if (r.size == n_pairs) {
      hi = mid;
      witness = std::move(r);
      witness_at = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (witness_at != lo) {
    witness = probe(cands[lo]);
  }

  BottleneckResult result;
  result.matching = Matching(std::move(witness.edges));
  result.bottleneck2 = bottleneck2(result.matching, ps);
  result.bottleneck = std::sqrt(result.bottleneck2);
  return result;
}

}  // namespace bncm
