#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "ramlab/error.hpp"
#include "ramlab/graph.hpp"
#include "ramlab/parallel.hpp"

namespace ramlab {

std::vector<int> bfs_distances(const RegularGraph& graph, Vertex x) {
  const std::size_t n = graph.n();
  if (x >= n) throw Error(Errc::VertexOutOfRange, "source vertex outside [0, n)");
  std::vector<int> dist(n, -1);
  std::vector<Vertex> queue;
  queue.reserve(n);
  dist[x] = 0;
  queue.push_back(x);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    for (Vertex v : graph.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  if (queue.size() != n) throw Error(Errc::Disconnected, "unreachable vertex in BFS");
  return dist;
}

double DistanceProfile::exceedance_fraction() const {
  std::size_t n = 0;
  for (auto c : histogram) n += c;
  return n == 0 ? 0.0 : static_cast<double>(exceedance) / static_cast<double>(n);
}

DistanceProfile distance_profile(const RegularGraph& graph, Vertex x, double window_radius) {
  if (!(window_radius >= 0.0)) {
    throw Error(Errc::InvariantViolation, "window radius must be nonnegative");
  }
  auto dist = bfs_distances(graph, x);
  DistanceProfile profile;
  profile.source = x;
  profile.window_radius = window_radius;
  profile.center = std::log(static_cast<double>(graph.n())) / std::log(graph.d() - 1.0);

  int max_dist = *std::max_element(dist.begin(), dist.end());
  profile.histogram.assign(static_cast<std::size_t>(max_dist) + 1, 0);
  for (int l : dist) ++profile.histogram[static_cast<std::size_t>(l)];

  std::size_t cumulative = 0;
  const std::size_t n = graph.n();
  for (std::size_t l = 0; l < profile.histogram.size(); ++l) {
    cumulative += profile.histogram[l];
    if (2 * cumulative >= n) {
      profile.median = static_cast<int>(l);
      break;
    }
  }
  for (std::size_t l = 0; l < profile.histogram.size(); ++l) {
    if (std::abs(static_cast<double>(l) - profile.center) > window_radius) {
      profile.exceedance += profile.histogram[l];
    }
  }
  return profile;
}

int diameter(const RegularGraph& graph) {
  const std::size_t n = graph.n();
  std::vector<int> eccentricity(n, 0);
  parallel_for(n, [&](std::size_t x) {
    auto dist = bfs_distances(graph, static_cast<Vertex>(x));
    eccentricity[x] = *std::max_element(dist.begin(), dist.end());
  });
  return *std::max_element(eccentricity.begin(), eccentricity.end());
}

namespace {

// Length of the shortest cycle through the BFS tree rooted at root, ignoring
// cycles of length >= bound. Returns bound when none is shorter.
int shortest_cycle_from(const RegularGraph& graph, Vertex root, int bound,
                        std::vector<int>& dist, std::vector<Vertex>& parent,
                        std::vector<Vertex>& queue) {
  queue.clear();
  dist[root] = 0;
  parent[root] = root;
  queue.push_back(root);
  int best = bound;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    // Any cycle closed from depth dist[u] has length >= 2*dist[u] + 1.
    if (2 * dist[u] + 1 >= best) break;
    for (Vertex v : graph.neighbors(u)) {
      if (v == parent[u]) continue;
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        parent[v] = u;
        queue.push_back(v);
      } else {
        best = std::min(best, dist[u] + dist[v] + 1);
      }
    }
  }
  for (Vertex v : queue) dist[v] = -1;
  return best;
}

}  // namespace

int girth(const RegularGraph& graph) {
  const std::size_t n = graph.n();
  // Per-vertex BFS with a shared running bound; each source is independent.
  std::atomic<int> best{std::numeric_limits<int>::max()};
  std::size_t chunks = std::min<std::size_t>(n, 64);
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<int> dist(n, -1);
    std::vector<Vertex> parent(n, 0);
    std::vector<Vertex> queue;
    queue.reserve(n);
    for (std::size_t x = c; x < n; x += chunks) {
      int bound = best.load();
      int found = shortest_cycle_from(graph, static_cast<Vertex>(x), bound, dist, parent, queue);
      int cur = best.load();
      while (found < cur && !best.compare_exchange_weak(cur, found)) {
      }
    }
  });
  return best.load();
}

GraphMetrics graph_metrics(const RegularGraph& graph) {
  return GraphMetrics{diameter(graph), girth(graph), graph.bipartite()};
}

double diameter_volume_lower_bound(std::size_t n, int d) {
  const double nn = static_cast<double>(n);
  return std::log((nn - 1.0) * (d - 2.0) / d + 1.0) / std::log(d - 1.0) - 1.0;
}

}  // namespace ramlab
