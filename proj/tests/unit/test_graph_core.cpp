#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"
#include "ramlab/error.hpp"
#include "ramlab/graph.hpp"
#include "ramlab/spectral.hpp"

using namespace ramlab;

namespace {

Errc code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::Usage;
}

}  // namespace

TEST_CASE("constructor rejects invalid graphs") {
  const std::vector<Edge> triangle_plus{{0, 1}, {1, 2}, {0, 2}, {0, 3}};
  CHECK(code_of([&] { RegularGraph::from_edges(4, triangle_plus); }) == Errc::IrregularGraph);

  // Two disjoint K_4.
  std::vector<Edge> two;
  for (Vertex base : {0u, 4u}) {
    for (Vertex u = 0; u < 4; ++u) {
      for (Vertex v = u + 1; v < 4; ++v) two.emplace_back(base + u, base + v);
    }
  }
  CHECK(code_of([&] { RegularGraph::from_edges(8, two); }) == Errc::Disconnected);

  // 3-regular multigraph on 2 vertices.
  const std::vector<Edge> multi{{0, 1}, {0, 1}, {0, 1}};
  CHECK(code_of([&] { RegularGraph::from_edges(2, multi); }) == Errc::NonSimple);

  const std::vector<Vertex> loops{0, 1, 2, 1, 0, 2, 2, 0, 1};
  CHECK(code_of([&] { RegularGraph::from_adjacency(3, 3, loops); }) == Errc::SelfLoop);

  // Row 0 lists 3 but row 3 does not list 0.
  const std::vector<Vertex> asym{1, 2, 3, 0, 2, 4, 0, 1, 4, 1, 2, 4, 1, 2, 3};
  const Errc asym_code = code_of([&] { RegularGraph::from_adjacency(5, 3, asym); });
  CHECK((asym_code == Errc::Asymmetric || asym_code == Errc::NonSimple));

  std::vector<Edge> cycle{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  CHECK(code_of([&] { RegularGraph::from_edges(4, cycle); }) == Errc::DegreeTooSmall);
}

TEST_CASE("directed edge space indexing") {
  for (const auto* g : {&fixtures::k4(), &fixtures::petersen(), &fixtures::lps29()}) {
    const auto e = validate_and_index(*g);
    CHECK(e.size() == g->n() * static_cast<std::size_t>(g->d()));
    for (EdgeId id = 0; id < e.size(); ++id) {
      CHECK(e.rev(id) != id);
      CHECK(e.rev(e.rev(id)) == id);
      CHECK(e.tail(e.rev(id)) == e.head(id));
      CHECK(e.tail(id) * static_cast<std::size_t>(g->d()) <= id);
      CHECK(id < (e.tail(id) + 1u) * static_cast<std::size_t>(g->d()));
      CHECK(e.head(id) == g->neighbors(e.tail(id))[id % g->d()]);
    }
  }
  CHECK(validate_and_index(fixtures::k4()).size() == 12);
  CHECK(validate_and_index(fixtures::petersen()).size() == 30);
  CHECK(validate_and_index(fixtures::lps29()).size() == 73080);
}

TEST_CASE("bfs distances") {
  CHECK(bfs_distances(fixtures::k4(), 0) == std::vector<int>{0, 1, 1, 1});
  for (Vertex x = 0; x < 10; ++x) {
    const auto d = bfs_distances(fixtures::petersen(), x);
    CHECK(*std::max_element(d.begin(), d.end()) == 2);
  }
  CHECK_THROWS_AS(bfs_distances(fixtures::k4(), 7), Error);
}

TEST_CASE("distance profile") {
  const auto k4 = distance_profile(fixtures::k4(), 0, 0.0);
  CHECK(k4.histogram == std::vector<std::size_t>{1, 3});
  CHECK(k4.center == doctest::Approx(2.0));
  CHECK(k4.exceedance == 4);
  CHECK(distance_profile(fixtures::petersen(), 3, 10.0).exceedance == 0);

  for (const auto* g : {&fixtures::petersen(), &fixtures::petersen_lift20(), &fixtures::lps13()}) {
    for (Vertex x : {0u, 1u, 5u}) {
      const auto p = distance_profile(*g, x, 1.0);
      CHECK(std::accumulate(p.histogram.begin(), p.histogram.end(), std::size_t{0}) == g->n());
      CHECK(p.histogram[0] == 1);
      double sphere = g->d();
      for (std::size_t l = 1; l < p.histogram.size(); ++l, sphere *= g->d() - 1) {
        CHECK(static_cast<double>(p.histogram[l]) <= sphere);
      }
      std::size_t cum = 0;
      for (int m = 0; m < p.median; ++m) cum += p.histogram[static_cast<std::size_t>(m)];
      CHECK(2 * cum < g->n());
      CHECK(2 * (cum + p.histogram[static_cast<std::size_t>(p.median)]) >= g->n());
    }
  }
}

TEST_CASE("graph metrics on named graphs") {
  auto k4 = graph_metrics(fixtures::k4());
  CHECK(k4.diameter == 1);
  CHECK(k4.girth == 3);
  CHECK_FALSE(k4.bipartite);
  auto k33 = graph_metrics(fixtures::k33());
  CHECK(k33.diameter == 2);
  CHECK(k33.girth == 4);
  CHECK(k33.bipartite);
  auto pet = graph_metrics(fixtures::petersen());
  CHECK(pet.diameter == 2);
  CHECK(pet.girth == 5);
  CHECK_FALSE(pet.bipartite);
}

TEST_CASE("diameter respects the ball-volume lower bound") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto g = fixtures::random3(seed, 200);
    CHECK(diameter(g) >= diameter_volume_lower_bound(g.n(), g.d()));
  }
  CHECK(diameter(fixtures::lps13()) >= diameter_volume_lower_bound(2184, 6));
}

TEST_CASE("bipartite flag agrees with the spectrum") {
  for (const auto* g : {&fixtures::k4(), &fixtures::k33(), &fixtures::petersen(), &fixtures::petersen_lift20()}) {
    const auto r = spectral::adjacency_spectrum(*g);
    const bool has_minus_d = std::abs(r.eigenvalues.back() + g->d()) < 1e-8;
    CHECK(has_minus_d == g->bipartite());
  }
  const auto& sides = *fixtures::k33().bipartition();
  CHECK(sides[0] == 0);
  for (auto [u, v] : fixtures::k33().edges()) CHECK(sides[u] != sides[v]);
}

TEST_CASE("girth by truncated bfs matches a brute-force cycle search") {
  // Brute force: the shortest cycle through edge (u,v) is 1 + dist(u,v) with that edge removed.
  for (std::uint64_t seed = 10; seed < 14; ++seed) {
    const auto g = fixtures::random3(seed, 40);
    int best = 1 << 30;
    for (auto [u, v] : g.edges()) {
      std::vector<int> dist(g.n(), -1);
      std::vector<Vertex> queue{u};
      dist[u] = 0;
      for (std::size_t h = 0; h < queue.size(); ++h) {
        const Vertex x = queue[h];
        for (Vertex y : g.neighbors(x)) {
          if ((x == u && y == v) || (x == v && y == u) || dist[y] >= 0) continue;
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
      if (dist[v] >= 0) best = std::min(best, dist[v] + 1);
    }
    CHECK(girth(g) == best);
  }
}
