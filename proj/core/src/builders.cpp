#include <algorithm>
#include <numeric>
#include <random>
#include <regex>

#include "ramlab/builders.hpp"
#include "ramlab/error.hpp"

namespace ramlab::build {

namespace {

// One pairing attempt: repeatedly match two uniformly chosen open half-edges,
// rejecting the draw when it would create a loop or a repeated edge. Returns
// false if the remaining half-edges admit no admissible pair.
bool pair_half_edges(std::size_t n, int d, std::mt19937_64& rng, std::vector<Vertex>& adjacency) {
  std::vector<Vertex> open;
  open.reserve(n * d);
  for (Vertex v = 0; v < n; ++v) {
    for (int k = 0; k < d; ++k) open.push_back(v);
  }
  std::vector<int> fill(n, 0);
  adjacency.assign(n * d, 0);
  auto linked = [&](Vertex u, Vertex v) {
    auto row = std::span(adjacency).subspan(static_cast<std::size_t>(u) * d, fill[u]);
    return std::find(row.begin(), row.end(), v) != row.end();
  };
  auto take = [&](std::size_t i) {
    open[i] = open.back();
    open.pop_back();
  };

  std::size_t misses = 0;
  while (!open.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    Vertex u = open[i];
    Vertex v = open[j];
    if (i == j || u == v || linked(u, v)) {
      if (++misses < 64 * static_cast<std::size_t>(d)) continue;
      // Many consecutive rejections: decide whether any admissible pair is left.
      bool any = false;
      for (std::size_t a = 0; a < open.size() && !any; ++a) {
        for (std::size_t b = a + 1; b < open.size() && !any; ++b) {
          any = open[a] != open[b] && !linked(open[a], open[b]);
        }
      }
      if (!any) return false;
      misses = 0;
      continue;
    }
    misses = 0;
    adjacency[static_cast<std::size_t>(u) * d + fill[u]++] = v;
    adjacency[static_cast<std::size_t>(v) * d + fill[v]++] = u;
    take(std::max(i, j));
    take(std::min(i, j));
  }
  return true;
}

}  // namespace

RegularGraph build_random_regular(std::size_t n, int d, std::uint64_t seed, int retry_budget) {
  if (d < 3) throw Error(Errc::DegreeTooSmall, "degree must be at least 3");
  if ((n * static_cast<std::size_t>(d)) % 2 != 0 || n <= static_cast<std::size_t>(d)) {
    throw Error(Errc::BadParams, "need n*d even and n > d");
  }
  std::vector<Vertex> adjacency;
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
    if (!pair_half_edges(n, d, rng, adjacency)) continue;
    Provenance prov;
    prov.family = "random_regular";
    prov.params["n"] = n;
    prov.params["d"] = d;
    prov.params["attempt"] = attempt;
    prov.seed = seed;
    try {
      return RegularGraph::from_adjacency(n, d, adjacency, std::move(prov));
    } catch (const Error& e) {
      if (e.code() != Errc::Disconnected) throw;
    }
  }
  throw Error(Errc::SamplingExhausted,
              "no simple connected sample within " + std::to_string(retry_budget) + " attempts");
}

RegularGraph build_random_lift(const LiftSpec& spec, int retry_budget) {
  if (spec.base == nullptr) throw Error(Errc::BadParams, "lift requires a base graph");
  if (spec.cover == 0) throw Error(Errc::BadParams, "cover number must be positive");
  const RegularGraph& base = *spec.base;
  for (Vertex v = 0; v < base.n(); ++v) {
    if (base.adjacent(v, v)) throw Error(Errc::BaseHasSelfLoop, "base graph has a self-loop");
  }
  const std::size_t m = spec.cover;
  const auto base_edges = base.edges();
  std::vector<Edge> edges;
  edges.reserve(base_edges.size() * m);
  std::vector<Vertex> perm(m);

  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    std::mt19937_64 rng(spec.seed + static_cast<std::uint64_t>(attempt));
    edges.clear();
    for (auto [u, v] : base_edges) {
      std::iota(perm.begin(), perm.end(), Vertex{0});
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::size_t i = 0; i < m; ++i) {
        edges.emplace_back(static_cast<Vertex>(u * m + i), static_cast<Vertex>(v * m + perm[i]));
      }
    }
    Provenance prov;
    prov.family = "lift";
    prov.params["base"] = base.provenance().to_json();
    prov.params["cover"] = m;
    prov.params["attempt"] = attempt;
    prov.seed = spec.seed;
    try {
      return RegularGraph::from_edges(base.n() * m, edges, std::move(prov));
    } catch (const Error& e) {
      if (e.code() != Errc::Disconnected) throw;
    }
  }
  throw Error(Errc::SamplingExhausted,
              "no connected lift within " + std::to_string(retry_budget) + " attempts");
}

bool is_covering_map(const RegularGraph& cover, const RegularGraph& base,
                     std::span<const Vertex> phi) {
  if (phi.size() != cover.n() || cover.d() != base.d()) return false;
  std::vector<Vertex> image;
  for (Vertex x = 0; x < cover.n(); ++x) {
    if (phi[x] >= base.n()) return false;
    image.clear();
    for (Vertex y : cover.neighbors(x)) image.push_back(phi[y]);
    std::sort(image.begin(), image.end());
    auto target = base.neighbors(phi[x]);
    if (!std::equal(image.begin(), image.end(), target.begin(), target.end())) return false;
  }
  return true;
}

RegularGraph build_named(const std::string& name) {
  static const std::regex with_arg(R"(^\s*([a-z_]+)\s*(?:\(\s*(\d+)\s*\))?\s*$)");
  std::smatch m;
  if (!std::regex_match(name, m, with_arg)) throw Error(Errc::UnknownName, "unknown graph: " + name);
  const std::string family = m[1];
  const bool has_arg = m[2].matched;
  const long k = has_arg ? std::stol(m[2]) : 0;

  Provenance prov;
  prov.family = family;
  std::vector<Edge> edges;
  std::size_t n = 0;

  if (family == "cycle") {
    throw Error(Errc::DegreeTooSmall, "cycles are 2-regular; degree must be at least 3");
  } else if (family == "petersen" && !has_arg) {
    n = 10;
    for (Vertex i = 0; i < 5; ++i) {
      edges.emplace_back(i, (i + 1) % 5);
      edges.emplace_back(i, i + 5);
      edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
  } else if (family == "complete" && has_arg) {
    if (k - 1 < 3) throw Error(Errc::DegreeTooSmall, "complete(k) needs k >= 4");
    n = static_cast<std::size_t>(k);
    prov.params["k"] = k;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    }
  } else if (family == "complete_bipartite" && has_arg) {
    if (k < 3) throw Error(Errc::DegreeTooSmall, "complete_bipartite(k) needs k >= 3");
    n = static_cast<std::size_t>(2 * k);
    prov.params["k"] = k;
    const auto side = static_cast<Vertex>(k);
    for (Vertex u = 0; u < side; ++u) {
      for (Vertex v = 0; v < side; ++v) edges.emplace_back(u, side + v);
    }
  } else {
    throw Error(Errc::UnknownName, "unknown graph: " + name);
  }
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
  }
  return RegularGraph::from_edges(n, edges, std::move(prov));
}

}  // namespace ramlab::build
