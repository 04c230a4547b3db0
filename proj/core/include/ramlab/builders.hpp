#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ramlab/graph.hpp"

namespace ramlab::build {

// Lubotzky-Phillips-Sarnak Cayley graph parameters. p, q distinct primes,
// both 1 mod 4, q > 2 sqrt(p). The graph is (p+1)-regular on PSL(2, F_q)
// when p is a square mod q and on PGL(2, F_q) (bipartite) otherwise.
struct LpsParams {
  int p = 5;
  int q = 29;
};

struct LpsInfo {
  bool psl = false;                   // p is a quadratic residue mod q
  std::size_t expected_order = 0;     // q(q^2-1)/2 or q(q^2-1)
  std::vector<std::array<int, 4>> quaternions;  // a0 odd > 0, a1..a3 even
};

bool is_prime(int v);
bool is_quadratic_residue(int a, int q);

// Checks the LpsParams invariants; throws BadParams.
LpsInfo lps_info(const LpsParams& params);

// Generators as canonical PGL(2, F_q) matrices (a, b, c, d) row-major,
// in the order of lps_info().quaternions.
std::vector<std::array<int, 4>> lps_generators(const LpsParams& params);

RegularGraph build_lps(const LpsParams& params);

inline constexpr int kRetryBudget = 100;

// Configuration-model pairing with rejection of loops, multi-edges and
// disconnected outcomes. Attempt i uses seed + i.
RegularGraph build_random_regular(std::size_t n, int d, std::uint64_t seed,
                                  int retry_budget = kRetryBudget);

struct LiftSpec {
  const RegularGraph* base = nullptr;
  std::size_t cover = 1;
  std::uint64_t seed = 0;
};

// Vertex (v, i) of the lift has id v * cover + i; the covering map is id / cover.
RegularGraph build_random_lift(const LiftSpec& spec, int retry_budget = kRetryBudget);

// Locally bijective homomorphism check: every neighbor list of x maps
// bijectively onto the neighbor list of phi(x).
bool is_covering_map(const RegularGraph& cover, const RegularGraph& base,
                     std::span<const Vertex> phi);

// complete(k), complete_bipartite(k), petersen. cycle / cycle(k) is rejected
// with DegreeTooSmall.
RegularGraph build_named(const std::string& name);

// Edge-list text format: "n d" then "u v" per undirected edge, u < v, sorted.
std::string to_edge_list(const RegularGraph& graph);
RegularGraph parse_edge_list(const std::string& text, Provenance provenance = {});

// Writes the edge list and a <path>.json provenance sidecar.
void save_graph(const RegularGraph& graph, const std::filesystem::path& path);
// Reads the edge list; the sidecar is used when present.
RegularGraph load_graph(const std::filesystem::path& path);
std::filesystem::path provenance_path(const std::filesystem::path& graph_path);

}  // namespace ramlab::build
