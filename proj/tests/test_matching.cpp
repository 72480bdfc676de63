#include <catch2/catch_amalgamated.hpp>

#include "bncm/matching.hpp"
#include "bncm/rng.hpp"
#include "helpers.hpp"

using namespace bncm;
using test_support::pairs;
using test_support::points;

TEST_CASE("bottleneck of simple matchings") {
  const PointSet ps = points({{0, 0}, {1, 0}, {0, 5}, {0, 6}});
  CHECK(bottleneck(pairs({{0, 1}, {2, 3}}), ps) == 1.0);

  const PointSet two = points({{0, 0}, {3, 4}});
  CHECK(bottleneck(pairs({{0, 1}}), two) == 5.0);

  const PointSet square = points({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(bottleneck(pairs({{0, 2}, {1, 3}}), square) == Catch::Approx(std::sqrt(2.0)));
}

TEST_CASE("bottleneck error paths") {
  const PointSet ps = points({{0, 0}, {1, 0}});
  CHECK_THROWS_AS(bottleneck(Matching(), ps), EmptyMatching);
  CHECK_THROWS_AS(bottleneck(pairs({{0, 5}}), ps), IndexOutOfRange);
}

TEST_CASE("perfectness") {
  const PointSet ps = points({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK(is_perfect(pairs({{0, 1}, {2, 3}}), ps));
  CHECK_FALSE(is_perfect(pairs({{0, 1}}), ps));
  const PointSet two = points({{0, 0}, {1, 0}});
  CHECK(is_perfect(pairs({{0, 1}}), two));
}

TEST_CASE("crossing detection") {
  const PointSet square = points({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(is_noncrossing(pairs({{0, 3}, {1, 2}}), square));   // two vertical sides
  CHECK_FALSE(is_noncrossing(pairs({{0, 2}, {1, 3}}), square));  // diagonals
  CHECK(is_noncrossing(pairs({{0, 2}}), square));  // single edge, vacuous
}

TEST_CASE("bottleneck is invariant under consistent reindexing") {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 * rng.uniform_int(1, 6);
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back({rng.uniform01(), rng.uniform01()});
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[static_cast<std::size_t>(rng.uniform_int(0, i))]);
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; i += 2) edges.push_back({i, i + 1});

    std::vector<Point> permuted(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      permuted[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
          pts[static_cast<std::size_t>(i)];
    }
    std::vector<std::pair<int, int>> mapped;
    for (const auto& [a, b] : edges) {
      mapped.push_back({perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]});
    }
    const PointSet ps(pts);
    const PointSet qs(permuted);
    CHECK(bottleneck2(Matching(edges), ps) == bottleneck2(Matching(mapped), qs));
  }
}

TEST_CASE("duplicate points are rejected at load time") {
  CHECK_THROWS_AS(points({{0, 0}, {1, 1}, {0, 0}}), DuplicatePoints);
  CHECK_THROWS_AS(PointSet(std::vector<Point>{{0, 0}, {std::nan(""), 1}}), ParseError);
}
