#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ramlab/error.hpp"
#include "ramlab/parallel.hpp"
#include "ramlab/theory.hpp"
#include "ramlab/tree.hpp"
#include "ramlab/walk.hpp"

namespace ramlab::walk {

std::string_view to_string(Kernel kernel) noexcept {
  return kernel == Kernel::Srw ? "srw" : "nbrw";
}

Space space_of(Kernel kernel) noexcept {
  return kernel == Kernel::Srw ? Space::Vertices : Space::DirectedEdges;
}

double ProbabilityVector::total() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

ProbabilityVector point_mass(Space space, std::size_t size, std::size_t index) {
  if (index >= size) throw Error(Errc::VertexOutOfRange, "state index out of range");
  ProbabilityVector v{space, std::vector<double>(size, 0.0)};
  v.values[index] = 1.0;
  return v;
}

namespace {

std::size_t state_count(Space space, const RegularGraph& graph) {
  return space == Space::Vertices ? graph.n() : graph.n() * static_cast<std::size_t>(graph.d());
}

// Side of the state: the vertex itself, or the tail of a directed edge.
int side_of(Space space, const RegularGraph& graph, std::size_t state) {
  const auto& sides = *graph.bipartition();
  const std::size_t v = space == Space::Vertices ? state : state / static_cast<std::size_t>(graph.d());
  return sides[v];
}

struct Distances {
  double tv = 0.0;
  std::vector<double> lp;
  double linf = 0.0;
};

// All requested distances in one pass over the states.
Distances all_distances(std::span<const double> dist, std::span<const double> ref,
                        std::span<const double> p_list) {
  Distances out;
  out.lp.assign(p_list.size(), 0.0);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (ref[i] == 0.0) {
      if (dist[i] != 0.0) throw Error(Errc::SupportViolation, "mass outside the reference support");
      continue;
    }
    const double r = std::abs(dist[i] / ref[i] - 1.0);
    out.tv += std::abs(dist[i] - ref[i]);
    out.linf = std::max(out.linf, r);
    for (std::size_t j = 0; j < p_list.size(); ++j) {
      const double p = p_list[j];
      if (std::isinf(p)) continue;
      out.lp[j] += ref[i] * (p == 1.0 ? r : p == 2.0 ? r * r : std::pow(r, p));
    }
  }
  out.tv *= 0.5;
  for (std::size_t j = 0; j < p_list.size(); ++j) {
    const double p = p_list[j];
    out.lp[j] = std::isinf(p) ? out.linf : std::pow(out.lp[j], 1.0 / p);
  }
  return out;
}

void check_p(double p) {
  if (!(p >= 1.0)) throw Error(Errc::BadParams, "p must lie in [1, inf]");
}

}  // namespace

ProbabilityVector stationary(Space space, const RegularGraph& graph, std::optional<int> parity) {
  const std::size_t size = state_count(space, graph);
  if (!parity) return {space, std::vector<double>(size, 1.0 / static_cast<double>(size))};
  if (!graph.bipartite()) {
    throw Error(Errc::ParityOnNonBipartite, "parity reference on a non-bipartite graph");
  }
  if (*parity != 0 && *parity != 1) throw Error(Errc::BadParams, "parity must be 0 or 1");
  ProbabilityVector v{space, std::vector<double>(size, 0.0)};
  std::size_t count = 0;
  for (std::size_t s = 0; s < size; ++s) count += side_of(space, graph, s) == *parity;
  for (std::size_t s = 0; s < size; ++s) {
    if (side_of(space, graph, s) == *parity) v.values[s] = 1.0 / static_cast<double>(count);
  }
  return v;
}

void step_into(const RegularGraph& graph, const DirectedEdgeSpace& edges, Kernel kernel,
               std::span<const double> in, std::span<double> out) {
  const std::size_t d = static_cast<std::size_t>(graph.d());
  const std::size_t expected = kernel == Kernel::Srw ? graph.n() : edges.size();
  if (in.size() != expected || out.size() != expected) {
    throw Error(Errc::SpaceMismatch, "distribution does not live on the kernel's state space");
  }
  if (kernel == Kernel::Srw) {
    const double w = 1.0 / static_cast<double>(d);
    for (Vertex y = 0; y < graph.n(); ++y) {
      double acc = 0.0;
      for (Vertex x : graph.neighbors(y)) acc += in[x];
      out[y] = acc * w;
    }
    return;
  }
  // Pull form: mass on (v,z) is everything entering v except what arrived
  // along (z,v), split d-1 ways.
  const double w = 1.0 / static_cast<double>(d - 1);
  const auto rev = edges.reversals();
  for (std::size_t v = 0; v < graph.n(); ++v) {
    const std::size_t base = v * d;
    double entering = 0.0;
    for (std::size_t k = 0; k < d; ++k) entering += in[rev[base + k]];
    for (std::size_t k = 0; k < d; ++k) {
      out[base + k] = std::max(0.0, entering - in[rev[base + k]]) * w;
    }
  }
}

ProbabilityVector step(const RegularGraph& graph, const DirectedEdgeSpace& edges, Kernel kernel,
                       const ProbabilityVector& dist) {
  if (dist.space != space_of(kernel)) throw Error(Errc::SpaceMismatch, "space does not match kernel");
  ProbabilityVector out{dist.space, std::vector<double>(dist.values.size(), 0.0)};
  step_into(graph, edges, kernel, dist.values, out.values);
  return out;
}

double distance_to_stationarity(const ProbabilityVector& dist, const ProbabilityVector& reference,
                                 double p) {
  if (dist.space != reference.space || dist.values.size() != reference.values.size()) {
    throw Error(Errc::SpaceMismatch, "distribution and reference live on different spaces");
  }
  check_p(p);
  const double ps[] = {p};
  return all_distances(dist.values, reference.values, ps).lp[0];
}

double l2_distance_by_expansion(const ProbabilityVector& dist, const ProbabilityVector& reference) {
  if (dist.space != reference.space || dist.values.size() != reference.values.size()) {
    throw Error(Errc::SpaceMismatch, "distribution and reference live on different spaces");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < dist.values.size(); ++i) {
    if (reference.values[i] == 0.0) {
      if (dist.values[i] != 0.0) throw Error(Errc::SupportViolation, "mass outside the reference support");
      continue;
    }
    acc += dist.values[i] * dist.values[i] / reference.values[i];
  }
  return std::sqrt(std::max(0.0, acc - 1.0));
}

double total_variation(const ProbabilityVector& dist, const ProbabilityVector& reference) {
  return 0.5 * distance_to_stationarity(dist, reference, 1.0);
}

const std::vector<double>& MixingCurve::column(Norm norm) const {
  if (norm.total_variation) return tv;
  if (std::isinf(norm.p)) return linf;
  for (std::size_t j = 0; j < p_list.size(); ++j) {
    if (p_list[j] == norm.p) return lp[j];
  }
  throw Error(Errc::BadParams, "p = " + std::to_string(norm.p) + " was not requested for this curve");
}

MixingCurve mixing_curve(const RegularGraph& graph, const DirectedEdgeSpace& edges, Kernel kernel,
                         std::size_t start, std::size_t t_max, std::span<const double> p_list,
                         bool lazy_first_step) {
  for (double p : p_list) check_p(p);
  const Space space = space_of(kernel);
  const std::size_t size = state_count(space, graph);
  MixingCurve curve;
  curve.kernel = kernel;
  curve.lazy_first_step = lazy_first_step;
  curve.starts = {start};
  curve.p_list.assign(p_list.begin(), p_list.end());
  curve.lp.assign(p_list.size(), {});

  const bool parity = graph.bipartite() && !lazy_first_step;
  ProbabilityVector uniform = stationary(space, graph);
  std::optional<ProbabilityVector> by_side[2];
  int start_side = 0;
  if (parity) {
    start_side = side_of(space, graph, start);
    by_side[0] = stationary(space, graph, 0);
    by_side[1] = stationary(space, graph, 1);
  }

  std::vector<double> cur = point_mass(space, size, start).values;
  std::vector<double> next(size), law(size);
  if (lazy_first_step) step_into(graph, edges, kernel, cur, next);

  auto record = [&](std::span<const double> dist, std::span<const double> ref, int reference) {
    Distances dd = all_distances(dist, ref, p_list);
    curve.tv.push_back(dd.tv);
    for (std::size_t j = 0; j < p_list.size(); ++j) curve.lp[j].push_back(dd.lp[j]);
    curve.linf.push_back(dd.linf);
    curve.reference.push_back(reference);
  };

  for (std::size_t t = 0; t <= t_max; ++t) {
    if (lazy_first_step) {
      // cur holds time t, next holds time t+1.
      for (std::size_t i = 0; i < size; ++i) law[i] = 0.5 * (cur[i] + next[i]);
      record(law, uniform.values, -1);
      if (t == t_max) break;
      cur.swap(next);
      step_into(graph, edges, kernel, cur, next);
    } else {
      if (parity) {
        const int rel = static_cast<int>(t % 2);
        record(cur, by_side[start_side ^ rel]->values, rel);
      } else {
        record(cur, uniform.values, -1);
      }
      if (t == t_max) break;
      step_into(graph, edges, kernel, cur, next);
      cur.swap(next);
    }
  }
  return curve;
}

MixingCurve worst_case_curve(const RegularGraph& graph, const DirectedEdgeSpace& edges,
                             Kernel kernel, std::span<const std::size_t> starts,
                             std::size_t t_max, std::span<const double> p_list,
                             bool lazy_first_step) {
  if (starts.empty()) throw Error(Errc::BadParams, "need at least one start");
  std::vector<MixingCurve> curves(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    curves[i] = mixing_curve(graph, edges, kernel, starts[i], t_max, p_list, lazy_first_step);
  });
  MixingCurve out = std::move(curves[0]);
  for (std::size_t i = 1; i < curves.size(); ++i) {
    const auto& c = curves[i];
    for (std::size_t t = 0; t <= t_max; ++t) {
      out.tv[t] = std::max(out.tv[t], c.tv[t]);
      out.linf[t] = std::max(out.linf[t], c.linf[t]);
      for (std::size_t j = 0; j < out.lp.size(); ++j) out.lp[j][t] = std::max(out.lp[j][t], c.lp[j][t]);
    }
  }
  out.starts.assign(starts.begin(), starts.end());
  return out;
}

std::vector<std::size_t> select_starts(std::size_t state_count, std::uint64_t seed,
                                       std::size_t exact_cap, std::size_t sample) {
  std::vector<std::size_t> all(state_count);
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (state_count <= exact_cap || sample >= state_count) return all;
  std::vector<std::size_t> picked;
  picked.reserve(sample);
  std::mt19937_64 rng(seed);
  std::sample(all.begin(), all.end(), std::back_inserter(picked), sample, rng);
  return picked;
}

std::size_t mixing_time(const MixingCurve& curve, double eps, Norm norm) {
  const auto& col = curve.column(norm);
  for (std::size_t t = 0; t < col.size(); ++t) {
    if (col[t] <= eps) return t;
  }
  throw Error(Errc::NotReached, "threshold not reached by t_max = " + std::to_string(curve.t_max()));
}

ProbabilityVector nbrw_projected(const RegularGraph& graph, const DirectedEdgeSpace& edges,
                                 Vertex x, std::size_t k) {
  if (x >= graph.n()) throw Error(Errc::VertexOutOfRange, "vertex out of range");
  if (k == 0) return point_mass(Space::Vertices, graph.n(), x);
  const std::size_t d = static_cast<std::size_t>(graph.d());
  std::vector<double> cur(edges.size(), 0.0), next(edges.size());
  for (std::size_t r = 0; r < d; ++r) cur[x * d + r] = 1.0 / static_cast<double>(d);
  for (std::size_t s = 1; s < k; ++s) {
    step_into(graph, edges, Kernel::Nbrw, cur, next);
    cur.swap(next);
  }
  ProbabilityVector out{Space::Vertices, std::vector<double>(graph.n(), 0.0)};
  for (std::size_t e = 0; e < cur.size(); ++e) out.values[edges.head(static_cast<EdgeId>(e))] += cur[e];
  return out;
}

double srw_mixture_residual(const RegularGraph& graph, const DirectedEdgeSpace& edges, Vertex x,
                            std::size_t t) {
  if (x >= graph.n()) throw Error(Errc::VertexOutOfRange, "vertex out of range");
  const std::size_t n = graph.n();
  const std::size_t d = static_cast<std::size_t>(graph.d());
  const auto radial = tree_radial_row(graph.d(), t);

  std::vector<double> srw = point_mass(Space::Vertices, n, x).values, tmp(n);
  for (std::size_t s = 0; s < t; ++s) {
    step_into(graph, edges, Kernel::Srw, srw, tmp);
    srw.swap(tmp);
  }

  // Mixture: k = 0 is the point mass; k >= 1 projects the NBRW after k-1 steps.
  std::vector<double> mix(n, 0.0);
  mix[x] += radial[0];
  std::vector<double> cur(edges.size(), 0.0), next(edges.size());
  for (std::size_t r = 0; r < d; ++r) cur[x * d + r] = 1.0 / static_cast<double>(d);
  for (std::size_t k = 1; k <= t; ++k) {
    if (k > 1) {
      step_into(graph, edges, Kernel::Nbrw, cur, next);
      cur.swap(next);
    }
    if (radial[k] == 0.0) continue;
    for (std::size_t e = 0; e < cur.size(); ++e) mix[edges.head(static_cast<EdgeId>(e))] += radial[k] * cur[e];
  }
  double worst = 0.0;
  for (std::size_t y = 0; y < n; ++y) worst = std::max(worst, std::abs(srw[y] - mix[y]));
  return worst;
}

std::vector<ProfileSample> empirical_cutoff_profile(const RegularGraph& graph,
                                                    std::span<const Vertex> starts,
                                                    std::span<const double> s_grid) {
  if (starts.empty()) throw Error(Errc::BadParams, "need at least one start");
  const auto pred = theory::cutoff_prediction(graph.n(), graph.d());
  std::vector<ProfileSample> samples;
  std::size_t t_max = 0;
  for (double s : s_grid) {
    ProfileSample p;
    p.s = s;
    p.t = static_cast<std::size_t>(std::max(0.0, std::round(pred.t_star + s * pred.window)));
    p.predicted = theory::profile_value(s, graph.d());
    t_max = std::max(t_max, p.t);
    samples.push_back(p);
  }
  const auto edges = validate_and_index(graph);
  std::vector<std::size_t> st(starts.begin(), starts.end());
  const auto curve = worst_case_curve(graph, edges, Kernel::Srw, st, t_max, {});
  for (auto& p : samples) p.empirical = curve.tv[p.t];
  return samples;
}

}  // namespace ramlab::walk
