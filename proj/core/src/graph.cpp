#include "ramlab/graph.hpp"

#include <algorithm>
#include <queue>

#include "ramlab/error.hpp"

namespace ramlab {

nlohmann::ordered_json Provenance::to_json() const {
  nlohmann::ordered_json j;
  j["family"] = family;
  j["params"] = params;
  if (seed) {
    j["seed"] = *seed;
  } else {
    j["seed"] = nullptr;
  }
  return j;
}

Provenance Provenance::from_json(const nlohmann::ordered_json& j) {
  Provenance p;
  p.family = j.at("family").get<std::string>();
  p.params = j.value("params", nlohmann::ordered_json::object());
  if (j.contains("seed") && !j.at("seed").is_null()) p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

namespace {

std::optional<std::vector<std::uint8_t>> two_coloring(std::size_t n, int d,
                                                       const std::vector<Vertex>& adj,
                                                       bool& connected) {
  std::vector<std::uint8_t> color(n, 2);
  std::vector<Vertex> queue;
  queue.reserve(n);
  color[0] = 0;
  queue.push_back(0);
  bool ok = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    for (int r = 0; r < d; ++r) {
      Vertex v = adj[static_cast<std::size_t>(u) * d + r];
      if (color[v] == 2) {
        color[v] = static_cast<std::uint8_t>(1 - color[u]);
        queue.push_back(v);
      } else if (color[v] == color[u]) {
        ok = false;
      }
    }
  }
  connected = queue.size() == n;
  if (!ok) return std::nullopt;
  return color;
}

}  // namespace

RegularGraph RegularGraph::from_edges(std::size_t n, std::span<const Edge> edges,
                                      Provenance provenance) {
  if (n == 0) throw Error(Errc::InvariantViolation, "graph has no vertices");
  std::vector<std::size_t> degree(n, 0);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw Error(Errc::VertexOutOfRange, "edge endpoint outside [0, n)");
    }
    if (u == v) throw Error(Errc::SelfLoop, "self-loop at vertex " + std::to_string(u));
    ++degree[u];
    ++degree[v];
  }
  const std::size_t d = degree[0];
  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] != d) {
      throw Error(Errc::IrregularGraph, "vertex " + std::to_string(v) + " has degree " +
                                            std::to_string(degree[v]) + ", expected " +
                                            std::to_string(d));
    }
  }
  std::vector<Vertex> adj(n * d);
  std::vector<std::size_t> fill(n, 0);
  for (auto [u, v] : edges) {
    adj[u * d + fill[u]++] = v;
    adj[v * d + fill[v]++] = u;
  }
  return from_adjacency(n, static_cast<int>(d), std::move(adj), std::move(provenance));
}

RegularGraph RegularGraph::from_adjacency(std::size_t n, int d, std::vector<Vertex> adjacency,
                                          Provenance provenance) {
  if (n == 0) throw Error(Errc::InvariantViolation, "graph has no vertices");
  if (d < 0 || adjacency.size() != n * static_cast<std::size_t>(d)) {
    throw Error(Errc::IrregularGraph, "adjacency size is not n*d");
  }
  if (d < 3) {
    throw Error(Errc::DegreeTooSmall, "degree " + std::to_string(d) + " < 3 is out of scope");
  }
  const std::size_t du = static_cast<std::size_t>(d);
  for (std::size_t u = 0; u < n; ++u) {
    auto row = std::span(adjacency).subspan(u * du, du);
    std::sort(row.begin(), row.end());
    for (std::size_t r = 0; r < du; ++r) {
      if (row[r] >= n) throw Error(Errc::VertexOutOfRange, "neighbor outside [0, n)");
      if (row[r] == u) throw Error(Errc::SelfLoop, "self-loop at vertex " + std::to_string(u));
      if (r > 0 && row[r] == row[r - 1]) {
        throw Error(Errc::NonSimple, "parallel edge " + std::to_string(u) + "-" +
                                         std::to_string(row[r]));
      }
    }
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t r = 0; r < du; ++r) {
      Vertex v = adjacency[u * du + r];
      auto row = std::span(adjacency).subspan(static_cast<std::size_t>(v) * du, du);
      if (!std::binary_search(row.begin(), row.end(), static_cast<Vertex>(u))) {
        throw Error(Errc::Asymmetric, "edge " + std::to_string(u) + "->" + std::to_string(v) +
                                          " has no reverse");
      }
    }
  }

  bool connected = false;
  auto coloring = two_coloring(n, d, adjacency, connected);
  if (!connected) throw Error(Errc::Disconnected, "graph is not connected");

  RegularGraph g;
  g.n_ = n;
  g.d_ = d;
  g.adjacency_ = std::move(adjacency);
  g.bipartition_ = std::move(coloring);
  g.provenance_ = std::move(provenance);
  return g;
}

std::optional<int> RegularGraph::neighbor_rank(Vertex v, Vertex w) const noexcept {
  if (v >= n_) return std::nullopt;
  auto row = neighbors(v);
  auto it = std::lower_bound(row.begin(), row.end(), w);
  if (it == row.end() || *it != w) return std::nullopt;
  return static_cast<int>(it - row.begin());
}

RegularGraph RegularGraph::with_provenance(Provenance provenance) const {
  RegularGraph g = *this;
  g.provenance_ = std::move(provenance);
  return g;
}

std::vector<Edge> RegularGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(n_ * d_ / 2);
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

DirectedEdgeSpace validate_and_index(const RegularGraph& graph) {
  const std::size_t n = graph.n();
  const int d = graph.d();
  DirectedEdgeSpace space;
  space.d_ = d;
  space.head_.assign(graph.adjacency().begin(), graph.adjacency().end());
  space.rev_.resize(n * d);
  for (Vertex u = 0; u < n; ++u) {
    auto row = graph.neighbors(u);
    for (int r = 0; r < d; ++r) {
      Vertex v = row[r];
      auto back = graph.neighbor_rank(v, u);
      if (!back) throw Error(Errc::Asymmetric, "missing reverse edge");
      space.rev_[space.id(u, r)] = space.id(v, *back);
    }
  }
  return space;
}

}  // namespace ramlab
