#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <optional>
#include <vector>

#include "bncm/reduce_rules.hpp"
#include "bncm/rng.hpp"
#include "helpers.hpp"

using namespace bncm;
using test_support::pairs;
using test_support::points;

namespace {

// Literal reference for the reduction semantics: after every firing, rescan
// all edges from the start; the first edge participating in an instance of
// the current rule fires with its least partner. Quadratic and independent of
// the production engine's candidate bookkeeping.
class NaiveReducer {
 public:
  NaiveReducer(const PointSet& ps, const GridContext& g, const Matching& m)
      : ps_(ps), g_(g), mate_(m.to_mates(ps.size())) {}

  void run() {
    for (;;) {
      bool any = false;
      for (int r = 0; r < 5; ++r) {
        while (step(r)) {
          any = true;
          ++fired_[static_cast<std::size_t>(r)];
        }
      }
      if (!any) break;
    }
  }

  Matching result() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < ps_.size(); ++i) {
      if (mate_[static_cast<std::size_t>(i)] > i) out.push_back({i, mate_[static_cast<std::size_t>(i)]});
    }
    return Matching(out);
  }

  const std::array<long, 5>& fired() const { return fired_; }

 private:
  using Edge = std::pair<int, int>;

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int i = 0; i < ps_.size(); ++i) {
      if (mate_[static_cast<std::size_t>(i)] > i) out.push_back({i, mate_[static_cast<std::size_t>(i)]});
    }
    return out;
  }

  EdgeKind kind(Edge e) const {
    const CellIndex a = g_.cell_of(e.first), b = g_.cell_of(e.second);
    const auto dx = std::abs(a.ix - b.ix), dy = std::abs(a.iy - b.iy);
    if (dx == 0 && dy == 0) return EdgeKind::Internal;
    if (dx + dy == 1) return EdgeKind::SEdge;
    return EdgeKind::DEdge;
  }

  CornerIndex corner(Edge e) const {
    const CellIndex a = g_.cell_of(e.first), b = g_.cell_of(e.second);
    return CornerIndex{std::max(a.ix, b.ix), std::max(a.iy, b.iy)};
  }

  bool same_cells(Edge e, Edge f) const {
    auto ce = std::make_pair(g_.cell_of(e.first), g_.cell_of(e.second));
    auto cf = std::make_pair(g_.cell_of(f.first), g_.cell_of(f.second));
    if (ce.second < ce.first) std::swap(ce.first, ce.second);
    if (cf.second < cf.first) std::swap(cf.first, cf.second);
    return ce == cf;
  }

  // Literal semi-open triangle membership for a zone of d-edge `d` at `pid`.
  bool in_zone_of(int pid, Edge d) const {
    const auto [f1, f2] = flank_cells(corner(d), diag_type_of(g_.cell_of(d.first),
                                                              g_.cell_of(d.second)));
    const CellIndex c = g_.cell_of(pid);
    if (c != f1 && c != f2) return false;
    return l1_dist(ps_[pid], g_.corner_point(corner(d))) < g_.zone_radius();
  }

  static bool cells_share_side(CellIndex a, CellIndex b) {
    return std::abs(a.ix - b.ix) + std::abs(a.iy - b.iy) == 1;
  }

  bool rule_iv_pair(Edge d, Edge s) const {
    for (int flip_d = 0; flip_d < 2; ++flip_d) {
      const int p1 = flip_d ? d.second : d.first;
      const int q1 = flip_d ? d.first : d.second;
      for (int flip_s = 0; flip_s < 2; ++flip_s) {
        const int p2 = flip_s ? s.second : s.first;
        const int q2 = flip_s ? s.first : s.second;
        if (g_.cell_of(p1) == g_.cell_of(p2) &&
            cells_share_side(g_.cell_of(q1), g_.cell_of(q2))) {
          return true;
        }
      }
    }
    return false;
  }

  std::optional<Edge> partner(int rule, Edge e, const std::vector<Edge>& all) const {
    const EdgeKind ke = kind(e);
    std::optional<Edge> best;
    auto consider = [&](Edge f) {
      if (f == e) return;
      if (!best || f < *best) best = f;
    };
    for (const Edge& f : all) {
      if (f == e) continue;
      const EdgeKind kf = kind(f);
      switch (rule) {
        case 0:
          if (ke == EdgeKind::DEdge && kf == EdgeKind::DEdge && corner(e) == corner(f) &&
              same_cells(e, f)) {
            consider(f);
          }
          break;
        case 1:
          if (ke == EdgeKind::DEdge && kf == EdgeKind::DEdge && corner(e) == corner(f) &&
              !same_cells(e, f)) {
            consider(f);
          }
          break;
        case 2:
          if (ke == EdgeKind::DEdge) {
            if (in_zone_of(f.first, e) || in_zone_of(f.second, e)) consider(f);
          } else if (kf == EdgeKind::DEdge) {
            if (in_zone_of(e.first, f) || in_zone_of(e.second, f)) consider(f);
          }
          break;
        case 3:
          if (ke == EdgeKind::DEdge && kf == EdgeKind::SEdge && rule_iv_pair(e, f)) consider(f);
          if (ke == EdgeKind::SEdge && kf == EdgeKind::DEdge && rule_iv_pair(f, e)) consider(f);
          break;
        case 4:
          if (ke == EdgeKind::SEdge && kf == EdgeKind::SEdge && same_cells(e, f)) consider(f);
          break;
        default: break;
      }
    }
    return best;
  }

  void relink(Edge a, Edge b, Edge na, Edge nb) {
    for (int v : {a.first, a.second, b.first, b.second}) mate_[static_cast<std::size_t>(v)] = -1;
    mate_[static_cast<std::size_t>(na.first)] = na.second;
    mate_[static_cast<std::size_t>(na.second)] = na.first;
    mate_[static_cast<std::size_t>(nb.first)] = nb.second;
    mate_[static_cast<std::size_t>(nb.second)] = nb.first;
  }

  int endpoint_in(Edge e, CellIndex c) const {
    return g_.cell_of(e.first) == c ? e.first : e.second;
  }

  double len2(Edge e) const { return dist2(ps_[e.first], ps_[e.second]); }

  std::pair<Edge, Edge> better(std::pair<Edge, Edge> a, std::pair<Edge, Edge> b) const {
    auto norm = [](std::pair<Edge, Edge> r) {
      if (r.first.first > r.first.second) std::swap(r.first.first, r.first.second);
      if (r.second.first > r.second.second) std::swap(r.second.first, r.second.second);
      if (r.second < r.first) std::swap(r.first, r.second);
      return r;
    };
    a = norm(a);
    b = norm(b);
    const double la = std::max(len2(a.first), len2(a.second));
    const double lb = std::max(len2(b.first), len2(b.second));
    if (la != lb) return la < lb ? a : b;
    return a <= b ? a : b;
  }

  void apply(int rule, Edge e, Edge f) {
    // Normalize roles: d-edge first where the rule is asymmetric.
    if ((rule == 2 || rule == 3) && kind(e) != EdgeKind::DEdge) std::swap(e, f);
    switch (rule) {
      case 0: {
        const auto [ca, cb] = diag_cells(corner(e), diag_type_of(g_.cell_of(e.first),
                                                                 g_.cell_of(e.second)));
        relink(e, f, {endpoint_in(e, ca), endpoint_in(f, ca)},
               {endpoint_in(e, cb), endpoint_in(f, cb)});
        break;
      }
      case 1: {
        const CornerIndex a = corner(e);
        const Edge em = diag_type_of(g_.cell_of(e.first), g_.cell_of(e.second)) == DiagType::Main
                            ? e
                            : f;
        const Edge ea = em == e ? f : e;
        const int sw = endpoint_in(em, corner_cell_sw(a));
        const int ne = endpoint_in(em, corner_cell_ne(a));
        const int se = endpoint_in(ea, corner_cell_se(a));
        const int nw = endpoint_in(ea, corner_cell_nw(a));
        const auto chosen = better({{sw, se}, {ne, nw}}, {{sw, nw}, {ne, se}});
        relink(e, f, chosen.first, chosen.second);
        break;
      }
      case 2: {
        const auto [c1, c2] = diag_cells(corner(e), diag_type_of(g_.cell_of(e.first),
                                                                 g_.cell_of(e.second)));
        const int u1 = endpoint_in(e, c1), u2 = endpoint_in(e, c2);
        int p = f.first, q = f.second;
        if (!in_zone_of(p, e)) std::swap(p, q);
        if (kind(f) == EdgeKind::SEdge) {
          const CellIndex cw = g_.cell_of(q);
          const int u_same = cw == c1 ? u1 : u2;
          const int u_other = cw == c1 ? u2 : u1;
          relink(e, f, {q, u_same}, {p, u_other});
          break;
        }
        // internal: find a different live d-edge owning a zone that holds q
        std::optional<Edge> e3;
        for (const Edge& d : edges()) {
          if (d == e || kind(d) != EdgeKind::DEdge) continue;
          if (in_zone_of(q, d) && (!e3 || d < *e3)) e3 = d;
        }
        if (!e3) {
          const auto chosen = better({{p, u1}, {q, u2}}, {{p, u2}, {q, u1}});
          relink(e, f, chosen.first, chosen.second);
        } else {
          const CellIndex g1 = g_.cell_of(e3->first), g2 = g_.cell_of(e3->second);
          const CellIndex shared = (c1 == g1 || c1 == g2) ? c1 : c2;
          const int u_shared = shared == c1 ? u1 : u2;
          const int u_other = shared == c1 ? u2 : u1;
          relink(e, f, {q, u_shared}, {p, u_other});
        }
        break;
      }
      case 3: {
        const CellIndex x = g_.cell_of(e.first), y = g_.cell_of(e.second);
        const CellIndex cs = g_.cell_of(f.first);
        const CellIndex shared = (cs == x || cs == y) ? cs : g_.cell_of(f.second);
        const int d_in = endpoint_in(e, shared), s_in = endpoint_in(f, shared);
        const int d_out = d_in == e.first ? e.second : e.first;
        const int s_out = s_in == f.first ? f.second : f.first;
        relink(e, f, {d_in, s_in}, {d_out, s_out});
        break;
      }
      case 4: {
        CellIndex ca = g_.cell_of(e.first), cb = g_.cell_of(e.second);
        if (cb < ca) std::swap(ca, cb);
        relink(e, f, {endpoint_in(e, ca), endpoint_in(f, ca)},
               {endpoint_in(e, cb), endpoint_in(f, cb)});
        break;
      }
      default: break;
    }
  }

  bool step(int rule) {
    const auto all = edges();
    for (const Edge& e : all) {
      if (const auto f = partner(rule, e, all)) {
        apply(rule, e, *f);
        return true;
      }
    }
    return false;
  }

  const PointSet& ps_;
  const GridContext& g_;
  std::vector<int> mate_;
  std::array<long, 5> fired_{};
};

constexpr double kSide = 2.8284271247461903;  // cell side for delta = 1

Point cell_point(CellIndex c, double fx, double fy) {
  return Point{(static_cast<double>(c.ix) + fx) * kSide, (static_cast<double>(c.iy) + fy) * kSide};
}

struct Instance {
  std::vector<Point> pts;
  std::vector<std::pair<int, int>> edges;

  void add_pair(Point a, Point b) {
    REQUIRE(dist2(a, b) <= 1.0 + 1e-12);
    pts.push_back(a);
    pts.push_back(b);
    edges.push_back({static_cast<int>(pts.size()) - 2, static_cast<int>(pts.size()) - 1});
  }
};

// Instances dense around grid corners on a delta=1 grid anchored at (0,0):
// d-pairs, s-pairs, in-zone internal pairs, and straddlers that occupy two
// adjacent corner zones of one cell (with d-edges flanking both corners).
Instance adversarial_instance(Rng& rng, int pair_budget) {
  Instance inst;
  auto corner_pt = [](std::int64_t cx, std::int64_t cy) {
    return Point{static_cast<double>(cx) * kSide, static_cast<double>(cy) * kSide};
  };
  auto d_pair_at = [&](CornerIndex a, DiagType type) {
    const Point c = corner_pt(a.cx, a.cy);
    const double a1 = rng.uniform(0.03, 0.3), a2 = rng.uniform(0.03, 0.3);
    const double b1 = rng.uniform(0.03, 0.3), b2 = rng.uniform(0.03, 0.3);
    if (type == DiagType::Main) {
      inst.add_pair({c.x - a1, c.y - a2}, {c.x + b1, c.y + b2});
    } else {
      inst.add_pair({c.x + a1, c.y - a2}, {c.x - b1, c.y + b2});
    }
  };

  while (static_cast<int>(inst.edges.size()) < pair_budget) {
    const int pattern = rng.uniform_int(0, 9);
    const CornerIndex a{rng.uniform_int(1, 3), rng.uniform_int(1, 3)};
    if (pattern <= 2) {
      d_pair_at(a, rng.uniform_int(0, 1) ? DiagType::Main : DiagType::Anti);
    } else if (pattern <= 4) {
      // s-pair across a random vertical or horizontal side
      const bool vertical = rng.uniform_int(0, 1);
      const double along = rng.uniform(0.15, 0.85) * kSide;
      const double u1 = rng.uniform(0.03, 0.45), u2 = rng.uniform(0.03, 0.45);
      const double j1 = rng.uniform(-0.2, 0.2), j2 = rng.uniform(-0.2, 0.2);
      const Point c = corner_pt(a.cx, a.cy);
      if (vertical) {
        inst.add_pair({c.x - u1, c.y + along + j1}, {c.x + u2, c.y + along + j2});
      } else {
        inst.add_pair({c.x + along + j1, c.y - u1}, {c.x + along + j2, c.y + u2});
      }
    } else if (pattern == 5) {
      // internal pair in the middle of a cell
      const CellIndex cell{rng.uniform_int(0, 3), rng.uniform_int(0, 3)};
      const double fx = rng.uniform(0.25, 0.75), fy = rng.uniform(0.25, 0.75);
      const double dx = rng.uniform(-0.3, 0.3), dy = rng.uniform(-0.3, 0.3);
      inst.add_pair(cell_point(cell, fx, fy),
                    cell_point(cell, fx + dx / kSide, fy + dy / kSide));
    } else if (pattern <= 7) {
      // internal pair tucked into one corner zone
      const Point c = corner_pt(a.cx, a.cy);
      const double sx = rng.uniform_int(0, 1) ? 1.0 : -1.0;
      const double sy = rng.uniform_int(0, 1) ? 1.0 : -1.0;
      inst.add_pair({c.x + sx * rng.uniform(0.03, 0.55), c.y + sy * rng.uniform(0.03, 0.55)},
                    {c.x + sx * rng.uniform(0.03, 0.55), c.y + sy * rng.uniform(0.03, 0.55)});
    } else {
      // straddler: endpoints in the zones of two adjacent corners of one cell,
      // plus d-edges flanking those corners
      const bool horizontal = rng.uniform_int(0, 1);
      const CornerIndex b = horizontal ? CornerIndex{a.cx + 1, a.cy} : CornerIndex{a.cx, a.cy + 1};
      const double inward1 = rng.uniform(0.05, 0.12), inward2 = rng.uniform(0.05, 0.12);
      const double along1 = rng.uniform(0.95, 1.25), along2 = rng.uniform(0.95, 1.25);
      const double side_dir = rng.uniform_int(0, 1) ? 1.0 : -1.0;  // which flanking cell
      const Point pa = corner_pt(a.cx, a.cy), pb = corner_pt(b.cx, b.cy);
      Point p, q;
      if (horizontal) {
        p = Point{pa.x + along1, pa.y + side_dir * inward1};
        q = Point{pb.x - along2, pb.y + side_dir * inward2};
      } else {
        p = Point{pa.x + side_dir * inward1, pa.y + along1};
        q = Point{pb.x + side_dir * inward2, pb.y - along2};
      }
      inst.add_pair(p, q);
      // flanking d-edges at both corners: the diagonal pair not containing
      // the straddler's cell
      const CellIndex c_cell{static_cast<std::int64_t>(std::floor(p.x / kSide)),
                             static_cast<std::int64_t>(std::floor(p.y / kSide))};
      for (const CornerIndex corner : {a, b}) {
        const auto [m1, m2] = diag_cells(corner, DiagType::Main);
        const DiagType t = (c_cell == m1 || c_cell == m2) ? DiagType::Anti : DiagType::Main;
        if (static_cast<int>(inst.edges.size()) < pair_budget && rng.uniform01() < 0.8) {
          d_pair_at(corner, t);
        }
      }
    }
  }
  return inst;
}

}  // namespace

TEST_CASE("two parallel d-edges collapse to internal edges") {
  const PointSet ps = points({{2.7, 2.7}, {2.9, 2.9}, {2.6, 2.75}, {2.95, 2.95}});
  const GridContext g(ps, 1.0, Point{0.0, 0.0});
  const auto r = reduce_rules(ps, pairs({{0, 1}, {2, 3}}), g);
  CHECK(r.matching == pairs({{0, 2}, {1, 3}}));
  CHECK(r.stats.fired[0] == 1);
  CHECK(r.stats.total_fired() == 1);
}

TEST_CASE("two s-edges between the same cells collapse to internal edges") {
  const PointSet ps = points({{2.7, 1}, {3.0, 1}, {2.75, 2}, {2.9, 2}});
  const GridContext g(ps, 1.0, Point{0.0, 0.0});
  const auto r = reduce_rules(ps, pairs({{0, 1}, {2, 3}}), g);
  CHECK(r.matching == pairs({{0, 2}, {1, 3}}));
  CHECK(r.stats.fired[4] == 1);
  CHECK(r.stats.total_fired() == 1);
}

TEST_CASE("a matching with no external edges is returned unchanged") {
  const PointSet ps = points({{1, 1}, {1.5, 1.5}, {0.5, 0.7}, {1.2, 0.3}});
  const GridContext g(ps, 1.0, Point{0.0, 0.0});
  const Matching m = pairs({{0, 1}, {2, 3}});
  const auto r = reduce_rules(ps, m, g);
  CHECK(r.matching == m);
  CHECK(r.stats.total_fired() == 0);
}

TEST_CASE("crossing d-edges at one corner become two s-edges") {
  SECTION("tie on the longer edge breaks lexicographically") {
    const PointSet ps = points({{2.7, 2.7}, {2.9, 2.9}, {2.95, 2.75}, {2.75, 2.95}});
    const GridContext g(ps, 1.0, Point{0.0, 0.0});
    const auto r = reduce_rules(ps, pairs({{0, 1}, {2, 3}}), g);
    CHECK(r.matching == pairs({{0, 2}, {1, 3}}));
    CHECK(r.stats.fired[1] == 1);
  }
  SECTION("the pairing minimizing the longer new edge wins") {
    const PointSet ps = points({{2.7, 2.7}, {2.9, 2.9}, {3.0, 2.75}, {2.75, 2.95}});
    const GridContext g(ps, 1.0, Point{0.0, 0.0});
    const auto r = reduce_rules(ps, pairs({{0, 1}, {2, 3}}), g);
    CHECK(r.matching == pairs({{0, 3}, {1, 2}}));
    CHECK(r.stats.fired[1] == 1);
  }
}

TEST_CASE("an s-edge into a danger zone is rewired through the d-edge's cells") {
  // d-edge between cells (1,0) and (0,1); s-edge from the flanking cell (0,0)
  // into (1,0) with its near endpoint inside the zone.
  const PointSet ps = points({{2.9, 2.78}, {2.78, 2.9}, {2.7, 2.7}, {2.95, 2.6}});
  const GridContext g(ps, 1.0, Point{0.0, 0.0});
  const auto r = reduce_rules(ps, pairs({{0, 1}, {2, 3}}), g);
  CHECK(r.matching == pairs({{0, 3}, {1, 2}}));
  CHECK(r.stats.fired[2] == 1);
  CHECK(r.stats.claim_i_checks == 1);
  CHECK(r.stats.claim_ii_checks == 0);
}

TEST_CASE("an internal edge inside one danger zone becomes two s-edges") {
  const PointSet ps = points({{2.9, 2.78}, {2.78, 2.9}, {2.7, 2.7}, {2.2, 2.4}});
  const GridContext g(ps, 1.0, Point{0.0, 0.0});
  const auto r = reduce_rules(ps, pairs({{0, 1}, {2, 3}}), g);
  CHECK(r.matching == pairs({{0, 2}, {1, 3}}));
  CHECK(r.stats.fired[2] == 1);
  CHECK(r.stats.claim_i_checks == 0);
  CHECK(r.stats.claim_ii_checks == 0);
}

TEST_CASE("a straddler between two danger zones resolves by the shared cell") {
  // d-edges at two adjacent corners of cell (0,0), plus an internal edge with
  // one endpoint in each zone. The first rewiring goes through the cell the
  // two d-edges share; the second handles the s-edge it leaves in the zone.
  const PointSet ps = points({{2.9, 2.78},
                              {2.78, 2.9},
                              {2.9, 0.05},
                              {2.78, -0.06},
                              {2.5, 1.9},
                              {2.5, 0.95}});
  const GridContext g(ps, 1.0, Point{0.0, 0.0});
  const auto r = reduce_rules(ps, pairs({{0, 1}, {2, 3}, {4, 5}}), g);
  CHECK(r.matching == pairs({{0, 2}, {1, 4}, {3, 5}}));
  CHECK(r.stats.fired[2] == 2);
  CHECK(r.stats.claim_i_checks == 1);
  CHECK(r.stats.claim_ii_checks == 1);
}

TEST_CASE("a d-edge plus an s-edge on a flanking side is rewired") {
  const PointSet ps = points({{2.7, 2.7}, {2.9, 2.9}, {1.5, 2.7}, {1.4, 3.0}});
  const GridContext g(ps, 1.0, Point{0.0, 0.0});
  const auto r = reduce_rules(ps, pairs({{0, 1}, {2, 3}}), g);
  CHECK(r.matching == pairs({{0, 2}, {1, 3}}));
  CHECK(r.stats.fired[3] == 1);
}

TEST_CASE("verify_reduction_properties flags each violated property") {
  SECTION("property 1: non-adjacent cells") {
    const PointSet ps = points({{1, 1}, {8, 8}});
    const GridContext g(ps, 1.0, Point{0.0, 0.0});
    CHECK_THROWS_MATCHES(verify_reduction_properties(ps, pairs({{0, 1}}), g), PropertyViolation,
                         Catch::Matchers::Predicate<PropertyViolation>(
                             [](const PropertyViolation& e) { return e.property() == 1; }));
  }
  SECTION("property 2: two d-edges at one corner") {
    const PointSet ps = points({{2.7, 2.7}, {2.9, 2.9}, {2.6, 2.75}, {2.95, 2.95}});
    const GridContext g(ps, 1.0, Point{0.0, 0.0});
    CHECK_THROWS_MATCHES(verify_reduction_properties(ps, pairs({{0, 1}, {2, 3}}), g), PropertyViolation,
                         Catch::Matchers::Predicate<PropertyViolation>(
                             [](const PropertyViolation& e) { return e.property() == 2; }));
  }
  SECTION("property 3: overlong d-edge") {
    const PointSet ps = points({{2.7, 2.7}, {3.7, 3.8}});
    const GridContext g(ps, 1.0, Point{0.0, 0.0});
    CHECK_THROWS_MATCHES(verify_reduction_properties(ps, pairs({{0, 1}}), g), PropertyViolation,
                         Catch::Matchers::Predicate<PropertyViolation>(
                             [](const PropertyViolation& e) { return e.property() == 3; }));
  }
  SECTION("property 4: occupied danger zone") {
    const PointSet ps = points({{2.9, 2.78}, {2.78, 2.9}, {2.7, 2.7}});
    const GridContext g(ps, 1.0, Point{0.0, 0.0});
    CHECK_THROWS_MATCHES(verify_reduction_properties(ps, pairs({{0, 1}}), g), PropertyViolation,
                         Catch::Matchers::Predicate<PropertyViolation>(
                             [](const PropertyViolation& e) { return e.property() == 4; }));
  }
  SECTION("property 5: duplicated cell pair") {
    const PointSet ps = points({{2.7, 1}, {3.0, 1}, {2.75, 2}, {2.9, 2}});
    const GridContext g(ps, 1.0, Point{0.0, 0.0});
    CHECK_THROWS_MATCHES(verify_reduction_properties(ps, pairs({{0, 1}, {2, 3}}), g), PropertyViolation,
                         Catch::Matchers::Predicate<PropertyViolation>(
                             [](const PropertyViolation& e) { return e.property() == 5; }));
  }
  SECTION("property 6: s-edge from a flanking cell into a d-edge cell") {
    const PointSet ps = points({{2.9, 2.78}, {2.78, 2.9}, {1.5, 1.5}, {3.5, 1.5}});
    const GridContext g(ps, 1.0, Point{0.0, 0.0});
    CHECK_THROWS_MATCHES(verify_reduction_properties(ps, pairs({{0, 1}, {2, 3}}), g), PropertyViolation,
                         Catch::Matchers::Predicate<PropertyViolation>(
                             [](const PropertyViolation& e) { return e.property() == 6; }));
  }
}

TEST_CASE("reduction matches the literal reference on adversarial instances") {
  Rng rng(61);
  long claim_i = 0, claim_ii = 0;
  std::array<long, 5> fired{};
  for (int t = 0; t < 300; ++t) {
    Instance inst = adversarial_instance(rng, 3 + t % 14);
    PointSet ps;
    try {
      ps = PointSet(inst.pts);
    } catch (const DuplicatePoints&) {
      continue;  // astronomically unlikely; skip rather than bias the rng
    }
    const GridContext g(ps, 1.0, Point{0.0, 0.0});
    const Matching m(inst.edges);

    const auto fast = reduce_rules(ps, m, g);
    NaiveReducer naive(ps, g, m);
    naive.run();
    REQUIRE(fast.matching == naive.result());
    for (int r = 0; r < 5; ++r) {
      REQUIRE(fast.stats.fired[static_cast<std::size_t>(r)] ==
              naive.fired()[static_cast<std::size_t>(r)]);
      fired[static_cast<std::size_t>(r)] += fast.stats.fired[static_cast<std::size_t>(r)];
    }
    claim_i += fast.stats.claim_i_checks;
    claim_ii += fast.stats.claim_ii_checks;
    REQUIRE(is_perfect(fast.matching, ps));

    // Determinism: a second run reproduces the result exactly.
    REQUIRE(reduce_rules(ps, m, g).matching == fast.matching);
  }
  // The corpus must actually exercise every rule and both claim assertions.
  for (int r = 0; r < 5; ++r) CHECK(fired[static_cast<std::size_t>(r)] > 0);
  CHECK(claim_i > 0);
  CHECK(claim_ii > 0);
}

TEST_CASE("reduction preserves perfectness and never creates d-edges") {
  Rng rng(62);
  for (int t = 0; t < 100; ++t) {
    Instance inst = adversarial_instance(rng, 4 + t % 10);
    PointSet ps;
    try {
      ps = PointSet(inst.pts);
    } catch (const DuplicatePoints&) {
      continue;
    }
    const GridContext g(ps, 1.0, Point{0.0, 0.0});
    const auto r = reduce_rules(ps, Matching(inst.edges), g);
    REQUIRE(is_perfect(r.matching, ps));

    // d-edges of the output are a subset of the input's d-edges.
    const Matching input(inst.edges);
    std::set<std::pair<int, int>> input_d;
    for (const auto& [i, j] : input.pairs()) {
      if (classify(i, j, g).kind == EdgeKind::DEdge) input_d.insert({i, j});
    }
    for (const auto& [i, j] : r.matching.pairs()) {
      if (classify(i, j, g).kind == EdgeKind::DEdge) {
        REQUIRE(input_d.count({i, j}) == 1);
      }
    }
  }
}
