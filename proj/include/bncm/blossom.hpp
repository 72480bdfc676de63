#pragma once

#include <numeric>
#include <queue>
#include <utility>
#include <vector>

namespace bncm {

struct MaxMatchingResult {
  int size = 0;
  std::vector<std::pair<int, int>> edges;  // canonical (lo, hi), sorted
};

namespace detail {

// Maximum cardinality matching in a general graph: BFS alternating-forest
// search with odd-cycle (blossom) contraction via a base[] array. One
// augmentation costs O(V * E) in the worst case; a greedy warm start keeps
// the number of searches small in practice.
class BlossomMatcher {
 public:
  BlossomMatcher(int n, const std::vector<std::pair<int, int>>& edges)
      : n_(n), adj_(static_cast<std::size_t>(n)), match_(static_cast<std::size_t>(n), -1),
        parent_(static_cast<std::size_t>(n)), base_(static_cast<std::size_t>(n)),
        used_(static_cast<std::size_t>(n)), blossom_(static_cast<std::size_t>(n)) {
    for (const auto& [a, b] : edges) {
      adj_[static_cast<std::size_t>(a)].push_back(b);
      adj_[static_cast<std::size_t>(b)].push_back(a);
    }
  }

  MaxMatchingResult run() {
    for (int v = 0; v < n_; ++v) {
      if (match_[static_cast<std::size_t>(v)] != -1) continue;
      for (int to : adj_[static_cast<std::size_t>(v)]) {
        if (match_[static_cast<std::size_t>(to)] == -1) {
          match_[static_cast<std::size_t>(v)] = to;
          match_[static_cast<std::size_t>(to)] = v;
          break;
        }
      }
    }
    for (int v = 0; v < n_; ++v) {
      if (match_[static_cast<std::size_t>(v)] == -1) try_augment(v);
    }
    MaxMatchingResult result;
    for (int v = 0; v < n_; ++v) {
      const int m = match_[static_cast<std::size_t>(v)];
      if (m > v) result.edges.emplace_back(v, m);
    }
    result.size = static_cast<int>(result.edges.size());
    return result;
  }

 private:
  int lca(int a, int b) {
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    for (;;) {
      a = base_[static_cast<std::size_t>(a)];
      seen[static_cast<std::size_t>(a)] = 1;
      if (match_[static_cast<std::size_t>(a)] == -1) break;
      a = parent_[static_cast<std::size_t>(match_[static_cast<std::size_t>(a)])];
    }
    for (;;) {
      b = base_[static_cast<std::size_t>(b)];
      if (seen[static_cast<std::size_t>(b)]) return b;
      b = parent_[static_cast<std::size_t>(match_[static_cast<std::size_t>(b)])];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[static_cast<std::size_t>(v)] != b) {
      blossom_[static_cast<std::size_t>(base_[static_cast<std::size_t>(v)])] = 1;
      blossom_[static_cast<std::size_t>(
          base_[static_cast<std::size_t>(match_[static_cast<std::size_t>(v)])])] = 1;
      parent_[static_cast<std::size_t>(v)] = child;
      child = match_[static_cast<std::size_t>(v)];
      v = parent_[static_cast<std::size_t>(child)];
    }
  }

  bool try_augment(int root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(parent_.begin(), parent_.end(), -1);
    std::iota(base_.begin(), base_.end(), 0);
    used_[static_cast<std::size_t>(root)] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int to : adj_[static_cast<std::size_t>(v)]) {
        if (base_[static_cast<std::size_t>(v)] == base_[static_cast<std::size_t>(to)] ||
            match_[static_cast<std::size_t>(v)] == to) {
          continue;
        }
        if (to == root || (match_[static_cast<std::size_t>(to)] != -1 &&
                           parent_[static_cast<std::size_t>(
                               match_[static_cast<std::size_t>(to)])] != -1)) {
          const int cur_base = lca(v, to);
          std::fill(blossom_.begin(), blossom_.end(), 0);
          mark_path(v, cur_base, to);
          mark_path(to, cur_base, v);
          for (int i = 0; i < n_; ++i) {
            if (blossom_[static_cast<std::size_t>(base_[static_cast<std::size_t>(i)])]) {
              base_[static_cast<std::size_t>(i)] = cur_base;
              if (!used_[static_cast<std::size_t>(i)]) {
                used_[static_cast<std::size_t>(i)] = 1;
                q.push(i);
              }
            }
          }
        } else if (parent_[static_cast<std::size_t>(to)] == -1) {
          parent_[static_cast<std::size_t>(to)] = v;
          if (match_[static_cast<std::size_t>(to)] == -1) {
            // Alternate matched/unmatched along the tree path ending at `to`.
            int u = to;
            while (u != -1) {
              const int pv = parent_[static_cast<std::size_t>(u)];
              const int ppv = match_[static_cast<std::size_t>(pv)];
              match_[static_cast<std::size_t>(u)] = pv;
              match_[static_cast<std::size_t>(pv)] = u;
              u = ppv;
            }
            return true;
          }
          used_[static_cast<std::size_t>(match_[static_cast<std::size_t>(to)])] = 1;
          q.push(match_[static_cast<std::size_t>(to)]);
        }
      }
    }
    return false;
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_, parent_, base_;
  std::vector<char> used_, blossom_;
};

}  // namespace detail

// Maximum-cardinality matching of an undirected simple graph, with a witness.
inline MaxMatchingResult max_matching(int n_vertices,
                                      const std::vector<std::pair<int, int>>& edges) {
  detail::BlossomMatcher matcher(n_vertices, edges);
  return matcher.run();
}

}  // namespace bncm
