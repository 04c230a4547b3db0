#pragma once

#include <string>
#include <vector>

#include "ramlab/builders.hpp"
#include "ramlab/graph.hpp"

namespace fixtures {

// K_a x K_b (Cartesian product): (a+b-2)-regular. K_8 x K_4 is 10-regular
// with adjacency eigenvalue 6 = 2 sqrt(9), the double-root case.
inline ramlab::RegularGraph complete_product(ramlab::Vertex a, ramlab::Vertex b) {
  std::vector<ramlab::Edge> edges;
  auto id = [&](ramlab::Vertex i, ramlab::Vertex j) { return i * b + j; };
  for (ramlab::Vertex i = 0; i < a; ++i) {
    for (ramlab::Vertex j = 0; j < b; ++j) {
      for (ramlab::Vertex k = j + 1; k < b; ++k) edges.emplace_back(id(i, j), id(i, k));
      for (ramlab::Vertex k = i + 1; k < a; ++k) edges.emplace_back(id(i, j), id(k, j));
    }
  }
  ramlab::Provenance prov;
  prov.family = "complete_product";
  prov.params["a"] = a;
  prov.params["b"] = b;
  return ramlab::RegularGraph::from_edges(a * b, edges, prov);
}

inline const ramlab::RegularGraph& k4() {
  static const auto g = ramlab::build::build_named("complete(4)");
  return g;
}
inline const ramlab::RegularGraph& k33() {
  static const auto g = ramlab::build::build_named("complete_bipartite(3)");
  return g;
}
inline const ramlab::RegularGraph& petersen() {
  static const auto g = ramlab::build::build_named("petersen");
  return g;
}
inline const ramlab::RegularGraph& petersen_lift20() {
  static const auto g = ramlab::build::build_random_lift({&petersen(), 20, 2024});
  return g;
}
inline const ramlab::RegularGraph& lps13() {
  static const auto g = ramlab::build::build_lps({5, 13});
  return g;
}
inline const ramlab::RegularGraph& lps29() {
  static const auto g = ramlab::build::build_lps({5, 29});
  return g;
}
inline ramlab::RegularGraph random3(std::uint64_t seed, std::size_t n = 50) {
  return ramlab::build::build_random_regular(n, 3, seed);
}

}  // namespace fixtures
