#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ramlab/graph.hpp"

namespace ramlab::walk {

enum class Space { Vertices, DirectedEdges };

// Srw moves to a uniform neighbor. Nbrw moves from (u,v) to a uniform (v,z)
// with z != u, i.e. applies B/(d-1) to row vectors.
enum class Kernel { Srw, Nbrw };

std::string_view to_string(Kernel kernel) noexcept;
Space space_of(Kernel kernel) noexcept;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct ProbabilityVector {
  Space space = Space::Vertices;
  std::vector<double> values;

  double total() const;
};

ProbabilityVector point_mass(Space space, std::size_t size, std::size_t index);

// Uniform over vertices or directed edges. With a parity on a bipartite
// graph: uniform over that side, or over edges whose tail is on that side.
ProbabilityVector stationary(Space space, const RegularGraph& graph,
                             std::optional<int> parity = std::nullopt);

// One kernel application, matrix-free. Preserves total mass.
ProbabilityVector step(const RegularGraph& graph, const DirectedEdgeSpace& edges, Kernel kernel,
                       const ProbabilityVector& dist);
void step_into(const RegularGraph& graph, const DirectedEdgeSpace& edges, Kernel kernel,
               std::span<const double> in, std::span<double> out);

// ||dist/ref - 1||_{L^p(ref)} for p in [1, inf]. Throws SupportViolation if
// dist charges a state outside the support of ref.
double distance_to_stationarity(const ProbabilityVector& dist, const ProbabilityVector& reference,
                                 double p);
// L^2 distance through sum(dist^2/ref) - 1; agrees with the p = 2 case.
double l2_distance_by_expansion(const ProbabilityVector& dist, const ProbabilityVector& reference);
double total_variation(const ProbabilityVector& dist, const ProbabilityVector& reference);

// Which distance a mixing time is read from.
struct Norm {
  bool total_variation = true;
  double p = 1.0;

  static Norm tv() { return {true, 1.0}; }
  static Norm lp(double p) { return {false, p}; }
};

struct MixingCurve {
  Kernel kernel = Kernel::Srw;
  bool lazy_first_step = false;
  std::vector<std::size_t> starts;  // D(t) is the maximum over these states
  std::vector<double> p_list;
  std::vector<double> tv;               // indexed by t = 0..t_max
  std::vector<std::vector<double>> lp;  // lp[j][t] for p_list[j]
  std::vector<double> linf;
  // -1: uniform reference. 0/1: parity class relative to the start's side.
  std::vector<int> reference;

  std::size_t t_max() const { return tv.empty() ? 0 : tv.size() - 1; }
  // TV, a requested finite p, or p = inf.
  const std::vector<double>& column(Norm norm) const;
};

// The bipartite pure chain is compared against the parity-restricted
// stationary law at each t. lazy_first_step replaces the time-t law by the
// average of the time-t and time-(t+1) laws and compares with the uniform law.
MixingCurve mixing_curve(const RegularGraph& graph, const DirectedEdgeSpace& edges, Kernel kernel,
                         std::size_t start, std::size_t t_max, std::span<const double> p_list,
                         bool lazy_first_step = false);

// Per-time maximum over starts; starts are evolved in parallel.
MixingCurve worst_case_curve(const RegularGraph& graph, const DirectedEdgeSpace& edges,
                             Kernel kernel, std::span<const std::size_t> starts,
                             std::size_t t_max, std::span<const double> p_list,
                             bool lazy_first_step = false);

inline constexpr std::size_t kExactStartCap = 2000;
inline constexpr std::size_t kSampledStarts = 16;

// All states when state_count <= exact_cap, else a seeded sample.
std::vector<std::size_t> select_starts(std::size_t state_count, std::uint64_t seed,
                                       std::size_t exact_cap = kExactStartCap,
                                       std::size_t sample = kSampledStarts);

// First t with D(t) <= eps. Throws NotReached.
std::size_t mixing_time(const MixingCurve& curve, double eps, Norm norm);

// Law of the head of the NBRW after k-1 steps from a uniform edge out of x
// (k = 0: point mass at x).
ProbabilityVector nbrw_projected(const RegularGraph& graph, const DirectedEdgeSpace& edges,
                                 Vertex x, std::size_t k);

// sup_y |P^t(x,y) - sum_k P(|X_t| = k) mu_k(x,y)| where |X_t| is the radial
// part of the walk on the covering tree.
double srw_mixture_residual(const RegularGraph& graph, const DirectedEdgeSpace& edges, Vertex x,
                            std::size_t t);

struct ProfileSample {
  double s = 0.0;
  std::size_t t = 0;
  double empirical = 0.0;  // max over starts of D_tv(t)
  double predicted = 0.0;  // P(Z > c_d s)
};

// SRW total variation at t = round(t_star + s sqrt(log_{d-1} n)) against the
// Gaussian cutoff profile.
std::vector<ProfileSample> empirical_cutoff_profile(const RegularGraph& graph,
                                                    std::span<const Vertex> starts,
                                                    std::span<const double> s_grid);

}  // namespace ramlab::walk
