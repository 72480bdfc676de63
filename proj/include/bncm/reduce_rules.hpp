#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bncm/errors.hpp"
#include "bncm/grid.hpp"
#include "bncm/matching.hpp"

namespace bncm {

struct RuleStats {
  std::array<long, 5> fired{};  // per rule, I..V
  long claim_i_checks = 0;
  long claim_ii_checks = 0;
  long rule_iii_firings = 0;
  int passes = 0;

  long total_fired() const {
    long t = 0;
    for (long f : fired) t += f;
    return t;
  }
};

struct ReduceResult {
  Matching matching;
  RuleStats stats;
};

namespace detail {

using EdgeKey = std::uint64_t;

inline EdgeKey edge_key(int i, int j) {
  if (i > j) std::swap(i, j);
  return (static_cast<EdgeKey>(static_cast<std::uint32_t>(i)) << 32) |
         static_cast<std::uint32_t>(j);
}
inline int key_lo(EdgeKey k) { return static_cast<int>(k >> 32); }
inline int key_hi(EdgeKey k) { return static_cast<int>(k & 0xffffffffULL); }

struct SidePairKey {
  CellIndex a, b;  // normalized: a < b
  friend bool operator==(const SidePairKey&, const SidePairKey&) = default;
};

inline SidePairKey side_pair(CellIndex c1, CellIndex c2) {
  if (c2 < c1) std::swap(c1, c2);
  return SidePairKey{c1, c2};
}

struct SidePairHash {
  std::size_t operator()(const SidePairKey& k) const {
    const CellIndexHash h;
    return mix_hash(static_cast<std::uint64_t>(h(k.a)), static_cast<std::uint64_t>(h(k.b)));
  }
};

// The two lattice corners of the side shared by a normalized side pair.
inline std::array<CornerIndex, 2> side_corners(const SidePairKey& k) {
  if (k.b.ix == k.a.ix + 1) {  // horizontal neighbors, shared side x = b.ix
    return {CornerIndex{k.b.ix, k.a.iy}, CornerIndex{k.b.ix, k.a.iy + 1}};
  }
  // vertical neighbors, shared side y = b.iy
  return {CornerIndex{k.a.ix, k.b.iy}, CornerIndex{k.a.ix + 1, k.b.iy}};
}

// Stage-1 rewriting machine. Firing order is defined as: scan all edges in
// ascending (lo, hi) order, fire the first edge participating in an instance
// of the current rule, with the least-key counterpart as its partner. The
// candidate sets below realize that order without rescanning the whole
// matching after every firing.
class RuleEngine {
 public:
  RuleEngine(const PointSet& ps, const GridContext& g, std::vector<int> mates)
      : ps_(ps), g_(g), mate_(std::move(mates)) {
    for (int i = 0; i < ps_.size(); ++i) {
      if (const auto zc = g_.zone_corner_of(i)) zone_pts_[*zc].push_back(i);
    }
    for (int i = 0; i < ps_.size(); ++i) {
      const int j = mate_[static_cast<std::size_t>(i)];
      if (j > i) index_add(edge_key(i, j));
    }
  }

  RuleStats run() {
    seed_candidates();
    for (;;) {
      for (int r = 0; r < 5; ++r) exhaust(r);
      ++stats_.passes;
      // Full precondition re-scan; repeat the whole sequence if anything
      // still applies. Terminates: every firing strictly decreases
      // (#d-edges, #s-edges) lexicographically.
      seed_candidates();
      if (!any_instance()) break;
    }
    return stats_;
  }

  const std::vector<int>& mates() const { return mate_; }

 private:
  // --- basic edge facts ---

  bool alive(EdgeKey k) const { return mate_[static_cast<std::size_t>(key_lo(k))] == key_hi(k); }

  EdgeKind kind_of(EdgeKey k) const {
    const CellIndex a = g_.cell_of(key_lo(k));
    const CellIndex b = g_.cell_of(key_hi(k));
    const std::int64_t dx = std::abs(a.ix - b.ix);
    const std::int64_t dy = std::abs(a.iy - b.iy);
    if (dx == 0 && dy == 0) return EdgeKind::Internal;
    if (dx + dy == 1) return EdgeKind::SEdge;
    if (dx == 1 && dy == 1) return EdgeKind::DEdge;
    throw NonAdjacentCells("edge (" + std::to_string(key_lo(k)) + "," +
                           std::to_string(key_hi(k)) + ") inside the rule engine");
  }

  CornerIndex corner_of(EdgeKey k) const {
    const CellIndex a = g_.cell_of(key_lo(k));
    const CellIndex b = g_.cell_of(key_hi(k));
    return CornerIndex{std::max(a.ix, b.ix), std::max(a.iy, b.iy)};
  }

  DiagType diag_of(EdgeKey k) const {
    return diag_type_of(g_.cell_of(key_lo(k)), g_.cell_of(key_hi(k)));
  }

  int endpoint_in(EdgeKey k, CellIndex c) const {
    if (g_.cell_of(key_lo(k)) == c) return key_lo(k);
    if (g_.cell_of(key_hi(k)) == c) return key_hi(k);
    throw InvariantError("edge has no endpoint in the requested cell");
  }

  double len2(int i, int j) const { return dist2(ps_[i], ps_[j]); }

  // --- index maintenance ---

  void index_add(EdgeKey k) {
    switch (kind_of(k)) {
      case EdgeKind::DEdge:
        d_corner_[corner_of(k)][static_cast<int>(diag_of(k))].push_back(k);
        break;
      case EdgeKind::SEdge:
        s_bucket_[side_pair(g_.cell_of(key_lo(k)), g_.cell_of(key_hi(k)))].push_back(k);
        break;
      case EdgeKind::Internal:
        break;
    }
  }

  static void vec_erase(std::vector<EdgeKey>& v, EdgeKey k) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == k) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        return;
      }
    }
    throw InvariantError("rule engine index missing an edge it should hold");
  }

  void index_remove(EdgeKey k) {
    switch (kind_of(k)) {
      case EdgeKind::DEdge:
        vec_erase(d_corner_[corner_of(k)][static_cast<int>(diag_of(k))], k);
        break;
      case EdgeKind::SEdge:
        vec_erase(s_bucket_[side_pair(g_.cell_of(key_lo(k)), g_.cell_of(key_hi(k)))], k);
        break;
      case EdgeKind::Internal:
        break;
    }
  }

  void remove_edge(EdgeKey k) {
    index_remove(k);
    mate_[static_cast<std::size_t>(key_lo(k))] = -1;
    mate_[static_cast<std::size_t>(key_hi(k))] = -1;
  }

  void create_edge(int i, int j) {
    const EdgeKey k = edge_key(i, j);
    mate_[static_cast<std::size_t>(i)] = j;
    mate_[static_cast<std::size_t>(j)] = i;
    const EdgeKind kind = kind_of(k);
    if (kind == EdgeKind::DEdge) {
      throw InvariantError("a reduction rule produced a d-edge");
    }
    index_add(k);
    if (kind == EdgeKind::SEdge) {
      cand_[3].insert(k);
      cand_[4].insert(k);
      const SidePairKey bucket = side_pair(g_.cell_of(i), g_.cell_of(j));
      for (EdgeKey other : s_bucket_[bucket]) cand_[4 /* Rule V */].insert(other);
      // A fresh s-edge can enable Rule IV for d-edges at its side corners.
      for (const CornerIndex c : side_corners(bucket)) {
        if (auto it = d_corner_.find(c); it != d_corner_.end()) {
          for (const auto& lst : it->second) {
            for (EdgeKey dk : lst) cand_[3].insert(dk);
          }
        }
      }
    }
    if (g_.zone_corner_of(i) || g_.zone_corner_of(j)) cand_[2].insert(k);
  }

  // --- participation tests; fill `partner` with the least-key counterpart ---

  const std::vector<EdgeKey>* corner_list(CornerIndex a, DiagType t) const {
    auto it = d_corner_.find(a);
    if (it == d_corner_.end()) return nullptr;
    return &it->second[static_cast<int>(t)];
  }

  const std::vector<EdgeKey>* bucket_list(const SidePairKey& b) const {
    auto it = s_bucket_.find(b);
    if (it == s_bucket_.end()) return nullptr;
    return &it->second;
  }

  static void min_into(std::optional<EdgeKey>& best, EdgeKey k) {
    if (!best || k < *best) best = k;
  }

  bool participates_rule_i(EdgeKey k, EdgeKey& partner) const {
    if (kind_of(k) != EdgeKind::DEdge) return false;
    const auto* lst = corner_list(corner_of(k), diag_of(k));
    std::optional<EdgeKey> best;
    for (EdgeKey other : *lst) {
      if (other != k) min_into(best, other);
    }
    if (!best) return false;
    partner = *best;
    return true;
  }

  bool participates_rule_ii(EdgeKey k, EdgeKey& partner) const {
    if (kind_of(k) != EdgeKind::DEdge) return false;
    const DiagType other_type = diag_of(k) == DiagType::Main ? DiagType::Anti : DiagType::Main;
    const auto* lst = corner_list(corner_of(k), other_type);
    if (!lst || lst->empty()) return false;
    std::optional<EdgeKey> best;
    for (EdgeKey other : *lst) min_into(best, other);
    partner = *best;
    return true;
  }

  // For Rule III the instance is (d-edge, edge with an endpoint in one of its
  // danger zones); either side can be the scanned head.
  bool participates_rule_iii(EdgeKey k, EdgeKey& partner, bool& head_is_d) const {
    if (kind_of(k) == EdgeKind::DEdge) {
      const CornerIndex a = corner_of(k);
      const auto [f1, f2] = flank_cells(a, diag_of(k));
      std::optional<EdgeKey> best;
      if (auto it = zone_pts_.find(a); it != zone_pts_.end()) {
        for (int pid : it->second) {
          const CellIndex c = g_.cell_of(pid);
          if (c != f1 && c != f2) continue;
          const int m = mate_[static_cast<std::size_t>(pid)];
          const EdgeKey e2 = edge_key(pid, m);
          if (e2 != k) min_into(best, e2);
        }
      }
      if (!best) return false;
      partner = *best;
      head_is_d = true;
      return true;
    }
    std::optional<EdgeKey> best;
    for (int q : {key_lo(k), key_hi(k)}) {
      const auto zc = g_.zone_corner_of(q);
      if (!zc) continue;
      if (const EdgeKey* dk = active_zone_dedge(q, *zc)) min_into(best, *dk);
    }
    if (!best) return false;
    partner = *best;
    head_is_d = false;
    return true;
  }

  // The least-key live d-edge whose danger zone contains point q (which has
  // zone corner `a` in its own cell), or nullptr.
  const EdgeKey* active_zone_dedge(int q, CornerIndex a) const {
    const CellIndex c = g_.cell_of(q);
    // q's cell must be a flank of the d-edge, so the d-edge runs along the
    // diagonal pair not containing c.
    const auto [m1, m2] = diag_cells(a, DiagType::Main);
    const DiagType t = (c == m1 || c == m2) ? DiagType::Anti : DiagType::Main;
    const auto* lst = corner_list(a, t);
    if (!lst || lst->empty()) return nullptr;
    const EdgeKey* best = nullptr;
    for (const EdgeKey& dk : *lst) {
      if (!best || dk < *best) best = &dk;
    }
    return best;
  }

  bool participates_rule_iv(EdgeKey k, EdgeKey& partner) const {
    const EdgeKind kind = kind_of(k);
    std::optional<EdgeKey> best;
    if (kind == EdgeKind::DEdge) {
      const CornerIndex a = corner_of(k);
      const auto [x, y] = diag_cells(a, diag_of(k));
      const auto [f1, f2] = flank_cells(a, diag_of(k));
      for (const CellIndex& dc : {x, y}) {
        for (const CellIndex& fc : {f1, f2}) {
          if (const auto* lst = bucket_list(side_pair(dc, fc))) {
            for (EdgeKey sk : *lst) min_into(best, sk);
          }
        }
      }
    } else if (kind == EdgeKind::SEdge) {
      const SidePairKey bucket = side_pair(g_.cell_of(key_lo(k)), g_.cell_of(key_hi(k)));
      for (const CornerIndex c : side_corners(bucket)) {
        if (const auto* lst0 = corner_list(c, DiagType::Main)) {
          for (EdgeKey dk : *lst0) min_into(best, dk);
        }
        if (const auto* lst1 = corner_list(c, DiagType::Anti)) {
          for (EdgeKey dk : *lst1) min_into(best, dk);
        }
      }
    } else {
      return false;
    }
    if (!best) return false;
    partner = *best;
    return true;
  }

  bool participates_rule_v(EdgeKey k, EdgeKey& partner) const {
    if (kind_of(k) != EdgeKind::SEdge) return false;
    const auto* lst = bucket_list(side_pair(g_.cell_of(key_lo(k)), g_.cell_of(key_hi(k))));
    std::optional<EdgeKey> best;
    for (EdgeKey other : *lst) {
      if (other != k) min_into(best, other);
    }
    if (!best) return false;
    partner = *best;
    return true;
  }

  bool participates(int rule, EdgeKey k, EdgeKey& partner, bool& head_is_d) const {
    switch (rule) {
      case 0: return participates_rule_i(k, partner);
      case 1: return participates_rule_ii(k, partner);
      case 2: return participates_rule_iii(k, partner, head_is_d);
      case 3: return participates_rule_iv(k, partner);
      case 4: return participates_rule_v(k, partner);
      default: return false;
    }
  }

  // --- replacements ---

  struct Rewiring {
    std::pair<int, int> e1, e2;
  };

  static std::pair<EdgeKey, EdgeKey> sorted_keys(const Rewiring& r) {
    EdgeKey k1 = edge_key(r.e1.first, r.e1.second);
    EdgeKey k2 = edge_key(r.e2.first, r.e2.second);
    if (k2 < k1) std::swap(k1, k2);
    return {k1, k2};
  }

  Rewiring pick_better(const Rewiring& a, const Rewiring& b) const {
    const double la = std::max(len2(a.e1.first, a.e1.second), len2(a.e2.first, a.e2.second));
    const double lb = std::max(len2(b.e1.first, b.e1.second), len2(b.e2.first, b.e2.second));
    if (la != lb) return la < lb ? a : b;
    return sorted_keys(a) <= sorted_keys(b) ? a : b;
  }

  void apply(EdgeKey k1, EdgeKey k2, const Rewiring& rw, int rule) {
    remove_edge(k1);
    remove_edge(k2);
    create_edge(rw.e1.first, rw.e1.second);
    create_edge(rw.e2.first, rw.e2.second);
    ++stats_.fired[static_cast<std::size_t>(rule)];
  }

  void expect_kind(int i, int j, EdgeKind want, const char* what) const {
    if (kind_of(edge_key(i, j)) != want) {
      throw InvariantError(std::string("replacement edge has the wrong class in ") + what);
    }
  }

  void fire_rule_i(EdgeKey e1, EdgeKey e2) {
    const auto [ca, cb] = diag_cells(corner_of(e1), diag_of(e1));
    const Rewiring rw{{endpoint_in(e1, ca), endpoint_in(e2, ca)},
                      {endpoint_in(e1, cb), endpoint_in(e2, cb)}};
    expect_kind(rw.e1.first, rw.e1.second, EdgeKind::Internal, "Rule I");
    expect_kind(rw.e2.first, rw.e2.second, EdgeKind::Internal, "Rule I");
    apply(e1, e2, rw, 0);
  }

  void fire_rule_ii(EdgeKey head, EdgeKey partner) {
    const EdgeKey em = diag_of(head) == DiagType::Main ? head : partner;
    const EdgeKey ea = em == head ? partner : head;
    const CornerIndex a = corner_of(head);
    const int sw = endpoint_in(em, corner_cell_sw(a));
    const int ne = endpoint_in(em, corner_cell_ne(a));
    const int se = endpoint_in(ea, corner_cell_se(a));
    const int nw = endpoint_in(ea, corner_cell_nw(a));
    const Rewiring rw =
        pick_better(Rewiring{{sw, se}, {ne, nw}}, Rewiring{{sw, nw}, {ne, se}});
    expect_kind(rw.e1.first, rw.e1.second, EdgeKind::SEdge, "Rule II");
    expect_kind(rw.e2.first, rw.e2.second, EdgeKind::SEdge, "Rule II");
    apply(head, partner, rw, 1);
  }

  void fire_rule_iii(EdgeKey d, EdgeKey other) {
    const CornerIndex a = corner_of(d);
    const auto [c1, c2] = diag_cells(a, diag_of(d));
    const std::pair<CellIndex, CellIndex> flanks = flank_cells(a, diag_of(d));
    const int u1 = endpoint_in(d, c1);
    const int u2 = endpoint_in(d, c2);
    ++stats_.rule_iii_firings;

    auto in_zone_of_d = [this, a, flanks](int pid) {
      const auto zc = g_.zone_corner_of(pid);
      if (!zc || *zc != a) return false;
      const CellIndex c = g_.cell_of(pid);
      return c == flanks.first || c == flanks.second;
    };

    const EdgeKind other_kind = kind_of(other);
    if (other_kind == EdgeKind::DEdge) {
      throw InvariantError("Rule III met a d-edge endpoint inside a danger zone");
    }

    if (other_kind == EdgeKind::SEdge) {
      // (b): the in-zone endpoint keeps an s-edge, the far endpoint becomes
      // internal with the d-endpoint of its own cell.
      int p = key_lo(other);
      int w = key_hi(other);
      if (!in_zone_of_d(p)) std::swap(p, w);
      if (!in_zone_of_d(p)) {
        throw InvariantError("Rule III fired on an s-edge with no endpoint in a danger zone");
      }
      ++stats_.claim_i_checks;
      const CellIndex cw = g_.cell_of(w);
      if (cw != c1 && cw != c2) {
        throw ClaimViolation("s-edge hit by Rule III has its far endpoint outside the d-edge's cells");
      }
      const int u_same = cw == c1 ? u1 : u2;
      const int u_other = cw == c1 ? u2 : u1;
      const Rewiring rw{{w, u_same}, {p, u_other}};
      expect_kind(rw.e1.first, rw.e1.second, EdgeKind::Internal, "Rule III(b)");
      expect_kind(rw.e2.first, rw.e2.second, EdgeKind::SEdge, "Rule III(b)");
      apply(d, other, rw, 2);
      return;
    }

    // internal e2
    int p = key_lo(other);
    int q = key_hi(other);
    if (!in_zone_of_d(p)) std::swap(p, q);
    if (!in_zone_of_d(p)) {
      throw InvariantError("Rule III fired on an internal edge with no endpoint in a danger zone");
    }

    // Is q inside a danger zone of a *different* live d-edge?
    const EdgeKey* e3 = nullptr;
    const auto qz = g_.zone_corner_of(q);
    if (qz && *qz != a) e3 = active_zone_dedge(q, *qz);

    if (e3 == nullptr) {
      // (c): two s-edges; two valid pairings, keep the bottleneck-friendlier.
      const Rewiring rw = pick_better(Rewiring{{p, u1}, {q, u2}}, Rewiring{{p, u2}, {q, u1}});
      expect_kind(rw.e1.first, rw.e1.second, EdgeKind::SEdge, "Rule III(c)");
      expect_kind(rw.e2.first, rw.e2.second, EdgeKind::SEdge, "Rule III(c)");
      apply(d, other, rw, 2);
      return;
    }

    // (d): q must connect to the d-endpoint in the cell shared with e3.
    ++stats_.claim_ii_checks;
    const CornerIndex b = *qz;
    if (std::abs(b.cx - a.cx) + std::abs(b.cy - a.cy) != 1) {
      throw ClaimViolation("second danger zone's corner is not adjacent to the first along a side");
    }
    const auto [g1, g2] = diag_cells(b, diag_of(*e3));
    CellIndex shared;
    int shared_count = 0;
    for (const CellIndex& cc : {c1, c2}) {
      if (cc == g1 || cc == g2) {
        shared = cc;
        ++shared_count;
      }
    }
    if (shared_count != 1) {
      throw ClaimViolation("the two d-edges do not share exactly one endpoint cell");
    }
    const int u_shared = shared == c1 ? u1 : u2;
    const int u_other = shared == c1 ? u2 : u1;
    const Rewiring rw{{q, u_shared}, {p, u_other}};
    expect_kind(rw.e1.first, rw.e1.second, EdgeKind::SEdge, "Rule III(d)");
    expect_kind(rw.e2.first, rw.e2.second, EdgeKind::SEdge, "Rule III(d)");
    apply(d, other, rw, 2);
  }

  void fire_rule_iv(EdgeKey d, EdgeKey s) {
    const CornerIndex a = corner_of(d);
    const auto [x, y] = diag_cells(a, diag_of(d));
    const CellIndex cs1 = g_.cell_of(key_lo(s));
    CellIndex shared;
    if (cs1 == x || cs1 == y) {
      shared = cs1;
    } else {
      shared = g_.cell_of(key_hi(s));
      if (shared != x && shared != y) {
        throw InvariantError("Rule IV pair shares no cell");
      }
    }
    const int d_in = endpoint_in(d, shared);
    const int d_out = d_in == key_lo(d) ? key_hi(d) : key_lo(d);
    const int s_in = endpoint_in(s, shared);
    const int s_out = s_in == key_lo(s) ? key_hi(s) : key_lo(s);
    const Rewiring rw{{d_in, s_in}, {d_out, s_out}};
    expect_kind(rw.e1.first, rw.e1.second, EdgeKind::Internal, "Rule IV");
    expect_kind(rw.e2.first, rw.e2.second, EdgeKind::SEdge, "Rule IV");
    apply(d, s, rw, 3);
  }

  void fire_rule_v(EdgeKey e1, EdgeKey e2) {
    const SidePairKey bucket = side_pair(g_.cell_of(key_lo(e1)), g_.cell_of(key_hi(e1)));
    const Rewiring rw{{endpoint_in(e1, bucket.a), endpoint_in(e2, bucket.a)},
                      {endpoint_in(e1, bucket.b), endpoint_in(e2, bucket.b)}};
    expect_kind(rw.e1.first, rw.e1.second, EdgeKind::Internal, "Rule V");
    expect_kind(rw.e2.first, rw.e2.second, EdgeKind::Internal, "Rule V");
    apply(e1, e2, rw, 4);
  }

  void fire(int rule, EdgeKey head, EdgeKey partner, bool head_is_d) {
    switch (rule) {
      case 0: fire_rule_i(head, partner); break;
      case 1: fire_rule_ii(head, partner); break;
      case 2:
        if (head_is_d) {
          fire_rule_iii(head, partner);
        } else {
          fire_rule_iii(partner, head);
        }
        break;
      case 3:
        if (kind_of(head) == EdgeKind::DEdge) {
          fire_rule_iv(head, partner);
        } else {
          fire_rule_iv(partner, head);
        }
        break;
      case 4: fire_rule_v(head, partner); break;
      default: break;
    }
  }

  // --- driver ---

  void seed_candidates() {
    for (auto& c : cand_) c.clear();
    for (int i = 0; i < ps_.size(); ++i) {
      const int j = mate_[static_cast<std::size_t>(i)];
      if (j <= i) continue;
      const EdgeKey k = edge_key(i, j);
      switch (kind_of(k)) {
        case EdgeKind::DEdge:
          cand_[0].insert(k);
          cand_[1].insert(k);
          cand_[2].insert(k);
          cand_[3].insert(k);
          break;
        case EdgeKind::SEdge:
          cand_[3].insert(k);
          cand_[4].insert(k);
          break;
        case EdgeKind::Internal:
          break;
      }
      if (g_.zone_corner_of(i) || g_.zone_corner_of(j)) cand_[2].insert(k);
    }
  }

  bool exhaust(int rule) {
    bool fired_any = false;
    auto& cand = cand_[static_cast<std::size_t>(rule)];
    auto it = cand.begin();
    while (it != cand.end()) {
      const EdgeKey k = *it;
      EdgeKey partner = 0;
      bool head_is_d = false;
      if (!alive(k) || !participates(rule, k, partner, head_is_d)) {
        it = cand.erase(it);
        continue;
      }
      fire(rule, k, partner, head_is_d);
      fired_any = true;
      it = cand.begin();
    }
    return fired_any;
  }

  bool any_instance() const {
    for (int rule = 0; rule < 5; ++rule) {
      for (const EdgeKey k : cand_[static_cast<std::size_t>(rule)]) {
        EdgeKey partner = 0;
        bool head_is_d = false;
        if (alive(k) && participates(rule, k, partner, head_is_d)) return true;
      }
    }
    return false;
  }

  const PointSet& ps_;
  const GridContext& g_;
  std::vector<int> mate_;
  RuleStats stats_;
  std::unordered_map<CornerIndex, std::array<std::vector<EdgeKey>, 2>, CornerIndexHash> d_corner_;
  std::unordered_map<SidePairKey, std::vector<EdgeKey>, SidePairHash> s_bucket_;
  std::unordered_map<CornerIndex, std::vector<int>, CornerIndexHash> zone_pts_;
  std::array<std::set<EdgeKey>, 5> cand_;
};

}  // namespace detail

// Checks the six structural post-conditions of the reduction on matching m.
// Recomputes everything from scratch, independently of the rule engine's
// bookkeeping. Throws PropertyViolation(k) on the first failure.
inline void verify_reduction_properties(const PointSet& ps, const Matching& m, const GridContext& g) {
  std::vector<ClassifiedEdge> external;
  for (const auto& [i, j] : m.pairs()) {
    ClassifiedEdge e;
    try {
      e = classify(i, j, g);
    } catch (const NonAdjacentCells&) {
      throw PropertyViolation(1, "edge (" + std::to_string(i) + "," + std::to_string(j) +
                                     ") spans non-adjacent cells");
    }
    if (e.kind != EdgeKind::Internal) external.push_back(e);
  }

  std::map<CornerIndex, int> d_count;
  const double max_d2 = g.delta() * g.delta() * (1.0 + 1e-12);
  for (const ClassifiedEdge& e : external) {
    if (e.kind != EdgeKind::DEdge) continue;
    if (++d_count[e.corner] > 1) {
      throw PropertyViolation(2, "two d-edges share a corner");
    }
    if (dist2(ps[e.i], ps[e.j]) > max_d2) {
      throw PropertyViolation(3, "d-edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                     ") is longer than delta");
    }
    for (const DangerZone& z : danger_zones(e.corner, diag_type_of(e.cell_i, e.cell_j))) {
      for (int pid : g.points_in_cell(z.cell)) {
        if (z.contains_index(pid, g)) {
          throw PropertyViolation(4, "danger zone of d-edge (" + std::to_string(e.i) + "," +
                                         std::to_string(e.j) + ") contains point " +
                                         std::to_string(pid));
        }
      }
    }
  }

  std::map<CellIndex, std::vector<CellIndex>> targets;
  for (const ClassifiedEdge& e : external) {
    targets[e.cell_i].push_back(e.cell_j);
    targets[e.cell_j].push_back(e.cell_i);
  }
  for (auto& [cell, tgts] : targets) {
    std::sort(tgts.begin(), tgts.end());
    if (std::adjacent_find(tgts.begin(), tgts.end()) != tgts.end()) {
      throw PropertyViolation(5, "two external edges join the same pair of cells");
    }
    if (tgts.size() > 4) {
      throw PropertyViolation(5, "cell degree exceeds 4");
    }
  }

  std::set<std::pair<CellIndex, CellIndex>> s_pairs;
  for (const ClassifiedEdge& e : external) {
    if (e.kind == EdgeKind::SEdge) {
      s_pairs.insert(std::minmax(e.cell_i, e.cell_j));
    }
  }
  for (const ClassifiedEdge& e : external) {
    if (e.kind != EdgeKind::DEdge) continue;
    const auto [f1, f2] = flank_cells(e.corner, diag_type_of(e.cell_i, e.cell_j));
    for (const CellIndex& dc : {e.cell_i, e.cell_j}) {
      for (const CellIndex& fc : {f1, f2}) {
        if (s_pairs.count(std::minmax(dc, fc))) {
          throw PropertyViolation(6, "s-edge joins a cell flanking d-edge (" +
                                         std::to_string(e.i) + "," + std::to_string(e.j) +
                                         ") to one of its cells");
        }
      }
    }
  }
}

// Stage 1: rewrite a perfect matching until none of the five reduction rules
// applies, then check the six post-conditions. Rules run in order I..V, each
// to exhaustion; the whole sequence repeats if a full re-scan still finds an
// instance.
inline ReduceResult reduce_rules(const PointSet& ps, const Matching& m, const GridContext& g) {
  if (!is_perfect(m, ps)) {
    throw InputError("reduce_rules requires a perfect matching");
  }
  for (const auto& [i, j] : m.pairs()) {
    classify(i, j, g);  // NonAdjacentCells on a violated length precondition
  }
  detail::RuleEngine engine(ps, g, m.to_mates(ps.size()));
  ReduceResult result;
  result.stats = engine.run();

  std::vector<std::pair<int, int>> pairs;
  const auto& mates = engine.mates();
  for (int i = 0; i < ps.size(); ++i) {
    if (mates[static_cast<std::size_t>(i)] > i) pairs.emplace_back(i, mates[static_cast<std::size_t>(i)]);
  }
  result.matching = Matching(std::move(pairs));

  verify_reduction_properties(ps, result.matching, g);
  return result;
}

}  // namespace bncm
