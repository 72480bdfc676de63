#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bncm/errors.hpp"
#include "bncm/geometry.hpp"
#include "bncm/matching.hpp"

namespace bncm {

// Brute-force ground truth for small instances.
struct EnumerationBudget {
  int max_points = 16;
};

namespace detail {

inline void check_budget(const PointSet& ps, const EnumerationBudget& budget,
                         const char* what) {
  if (ps.size() > budget.max_points) {
    throw BudgetExceeded(std::string(what) + " is capped at " +
                         std::to_string(budget.max_points) + " points, got " +
                         std::to_string(ps.size()));
  }
  if (ps.size() % 2 != 0 || ps.size() < 2) {
    throw OddCardinality(std::string(what) + " needs an even number (>= 2) of points");
  }
}

// Recursively matches the lowest unmatched index with every larger unmatched
// index. Edges accumulate in ascending order, so each perfect matching is
// produced exactly once and the stream is lexicographic in the canonical
// edge-list encoding. When `noncrossing` is set, a branch dies as soon as a
// new edge intersects an existing one.
class MatchingEnumerator {
 public:
  MatchingEnumerator(const PointSet& ps, bool noncrossing,
                     const std::function<void(const std::vector<std::pair<int, int>>&)>& yield)
      : ps_(ps), noncrossing_(noncrossing), yield_(yield),
        used_(static_cast<std::size_t>(ps.size()), 0) {
    edges_.reserve(static_cast<std::size_t>(ps.size() / 2));
  }

  void run() { recurse(); }

 private:
  void recurse() {
    int lo = -1;
    for (int i = 0; i < ps_.size(); ++i) {
      if (!used_[static_cast<std::size_t>(i)]) {
        lo = i;
        break;
      }
    }
    if (lo == -1) {
      yield_(edges_);
      return;
    }
    used_[static_cast<std::size_t>(lo)] = 1;
    for (int j = lo + 1; j < ps_.size(); ++j) {
      if (used_[static_cast<std::size_t>(j)]) continue;
      if (noncrossing_ && crosses_existing(lo, j)) continue;
      used_[static_cast<std::size_t>(j)] = 1;
      edges_.emplace_back(lo, j);
      recurse();
      edges_.pop_back();
      used_[static_cast<std::size_t>(j)] = 0;
    }
    used_[static_cast<std::size_t>(lo)] = 0;
  }

  bool crosses_existing(int a, int b) const {
    const Segment s{ps_[a], ps_[b]};
    for (const auto& [i, j] : edges_) {
      if (!segments_disjoint(s, Segment{ps_[i], ps_[j]})) return true;
    }
    return false;
  }

  const PointSet& ps_;
  bool noncrossing_;
  const std::function<void(const std::vector<std::pair<int, int>>&)>& yield_;
  std::vector<char> used_;
  std::vector<std::pair<int, int>> edges_;
};

}  // namespace detail

// Streams all (2n-1)!! perfect matchings.
inline void enumerate_perfect(const PointSet& ps,
                              const std::function<void(const Matching&)>& fn,
                              EnumerationBudget budget = {}) {
  detail::check_budget(ps, budget, "enumerate_perfect");
  auto yield = [&fn](const std::vector<std::pair<int, int>>& edges) { fn(Matching(edges)); };
  detail::MatchingEnumerator(ps, false, yield).run();
}

// Streams exactly the non-crossing perfect matchings.
inline void enumerate_noncrossing(const PointSet& ps,
                                  const std::function<void(const Matching&)>& fn,
                                  EnumerationBudget budget = {}) {
  detail::check_budget(ps, budget, "enumerate_noncrossing");
  auto yield = [&fn](const std::vector<std::pair<int, int>>& edges) { fn(Matching(edges)); };
  detail::MatchingEnumerator(ps, true, yield).run();
}

struct OracleResult {
  Matching matching;
  double bottleneck2 = 0.0;
  double bottleneck = 0.0;
};

namespace detail {

inline OracleResult best_of_stream(const PointSet& ps, bool noncrossing) {
  OracleResult best;
  bool found = false;
  auto consider = [&](const std::vector<std::pair<int, int>>& edges) {
    double bn2 = 0.0;
    for (const auto& [i, j] : edges) bn2 = std::max(bn2, dist2(ps[i], ps[j]));
    // The stream is lexicographic, so a strict improvement rule doubles as
    // the lexicographic tie-break.
    if (!found || bn2 < best.bottleneck2) {
      found = true;
      best.bottleneck2 = bn2;
      best.matching = Matching(edges);
    }
  };
  MatchingEnumerator(ps, noncrossing, consider).run();
  if (!found) {
    throw InvariantError("matching enumeration produced nothing");
  }
  best.bottleneck = std::sqrt(best.bottleneck2);
  return best;
}

}  // namespace detail

// Minimum-bottleneck non-crossing perfect matching by exhaustive enumeration.
inline OracleResult exact_bncm(const PointSet& ps, EnumerationBudget budget = {}) {
  detail::check_budget(ps, budget, "exact_bncm");
  return detail::best_of_stream(ps, true);
}

// Minimum-bottleneck perfect matching (crossings allowed) by exhaustive
// enumeration.
inline OracleResult exact_bottleneck_bruteforce(const PointSet& ps,
                                                EnumerationBudget budget = {}) {
  detail::check_budget(ps, budget, "exact_bottleneck_bruteforce");
  return detail::best_of_stream(ps, false);
}

// Reads BNCM_ORACLE_CAP if set; otherwise the default cap.
inline EnumerationBudget budget_from_env() {
  EnumerationBudget budget;
  if (const char* cap = std::getenv("BNCM_ORACLE_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && *end == '\0' && v >= 2) {
      budget.max_points = static_cast<int>(v);
    }
  }
  return budget;
}

}  // namespace bncm
