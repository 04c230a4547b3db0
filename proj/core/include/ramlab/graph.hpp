#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace ramlab {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// How a graph was produced. Serialized verbatim into provenance sidecars and
// run manifests, so member order is stable.
struct Provenance {
  std::string family = "unknown";
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::optional<std::uint64_t> seed;

  nlohmann::ordered_json to_json() const;
  static Provenance from_json(const nlohmann::ordered_json& j);

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// Immutable connected simple d-regular graph (d >= 3) in compressed row form.
// Neighbor lists are sorted; bipartiteness is decided once at construction.
class RegularGraph {
 public:
  // Validates degree, loops, parallel edges and connectivity.
  static RegularGraph from_edges(std::size_t n, std::span<const Edge> edges,
                                 Provenance provenance = {});

  // adjacency is n*d entries, row u holding the neighbors of u in any order.
  static RegularGraph from_adjacency(std::size_t n, int d, std::vector<Vertex> adjacency,
                                     Provenance provenance = {});

  std::size_t n() const noexcept { return n_; }
  int d() const noexcept { return d_; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adjacency_.data() + static_cast<std::size_t>(v) * d_, static_cast<std::size_t>(d_)};
  }
  std::span<const Vertex> adjacency() const noexcept { return adjacency_; }

  // Rank of w in the sorted neighbor list of v, if adjacent.
  std::optional<int> neighbor_rank(Vertex v, Vertex w) const noexcept;
  bool adjacent(Vertex v, Vertex w) const noexcept { return neighbor_rank(v, w).has_value(); }

  bool bipartite() const noexcept { return bipartition_.has_value(); }
  // Side (0 or 1) of each vertex; vertex 0 is on side 0.
  const std::optional<std::vector<std::uint8_t>>& bipartition() const noexcept {
    return bipartition_;
  }

  const Provenance& provenance() const noexcept { return provenance_; }
  RegularGraph with_provenance(Provenance provenance) const;

  // Undirected edges (u < v), lexicographically sorted.
  std::vector<Edge> edges() const;

  friend bool operator==(const RegularGraph& a, const RegularGraph& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.adjacency_ == b.adjacency_;
  }

 private:
  RegularGraph() = default;

  std::size_t n_ = 0;
  int d_ = 0;
  std::vector<Vertex> adjacency_;
  std::optional<std::vector<std::uint8_t>> bipartition_;
  Provenance provenance_;
};

// The N = d*n directed edges with id(u -> v) = d*u + rank of v among u's
// neighbors. tail(id) is therefore id / d.
class DirectedEdgeSpace {
 public:
  std::size_t size() const noexcept { return head_.size(); }
  int degree() const noexcept { return d_; }

  Vertex tail(EdgeId e) const noexcept { return static_cast<Vertex>(e / d_); }
  Vertex head(EdgeId e) const noexcept { return head_[e]; }
  EdgeId rev(EdgeId e) const noexcept { return rev_[e]; }
  EdgeId id(Vertex u, int rank) const noexcept {
    return static_cast<EdgeId>(static_cast<std::size_t>(u) * d_ + rank);
  }

  std::span<const Vertex> heads() const noexcept { return head_; }
  std::span<const EdgeId> reversals() const noexcept { return rev_; }

 private:
  friend DirectedEdgeSpace validate_and_index(const RegularGraph& graph);
  int d_ = 0;
  std::vector<Vertex> head_;
  std::vector<EdgeId> rev_;
};

DirectedEdgeSpace validate_and_index(const RegularGraph& graph);

// Exact hop distances from x. Throws Disconnected if some vertex is unreachable.
std::vector<int> bfs_distances(const RegularGraph& graph, Vertex x);

struct DistanceProfile {
  Vertex source = 0;
  std::vector<std::size_t> histogram;  // histogram[l] = #{y : dist(x,y) = l}
  int median = 0;                      // smallest m with #{dist <= m} >= n/2
  double center = 0.0;                 // log_{d-1} n
  double window_radius = 0.0;
  std::size_t exceedance = 0;          // #{y : |dist(x,y) - center| > window_radius}

  double exceedance_fraction() const;
};

DistanceProfile distance_profile(const RegularGraph& graph, Vertex x, double window_radius);

struct GraphMetrics {
  int diameter = 0;
  int girth = 0;
  bool bipartite = false;
};

// Exact diameter via all-pairs BFS and girth via truncated per-vertex BFS.
GraphMetrics graph_metrics(const RegularGraph& graph);
int diameter(const RegularGraph& graph);
int girth(const RegularGraph& graph);

// log_{d-1}((n-1)(d-2)/d + 1) - 1, from the d(d-1)^{l-1} sphere growth bound.
double diameter_volume_lower_bound(std::size_t n, int d);

}  // namespace ramlab
