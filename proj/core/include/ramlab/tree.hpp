#pragma once

#include <cstddef>
#include <vector>

namespace ramlab::walk {

// Distance from the root of the simple random walk on the d-regular tree:
// a biased walk on {0, 1, ...} reflected at 0. From 0 it moves to 1; from
// k >= 1 it moves up with probability (d-1)/d and down with 1/d.
struct TreeRadialTable {
  int d = 3;
  std::size_t horizon = 0;
  std::vector<std::vector<double>> rows;  // rows[t][k] = P(|X_t| = k), k = 0..t

  double probability(std::size_t t, std::size_t k) const;
  // Q^t(root, root).
  double return_probability(std::size_t t) const { return probability(t, 0); }
  // ||Q^t(root, .)||_p on the tree, spread uniformly over spheres of size
  // d(d-1)^{k-1} (size 1 at k = 0). p = inf gives the largest point mass.
  double lp_norm(std::size_t t, double p) const;
};

TreeRadialTable tree_radial(int d, std::size_t horizon);

// Row t only, in O(t) memory.
std::vector<double> tree_radial_row(int d, std::size_t t);

// Q^{2t}(root, root) * rho^{-2t}, computed on a rescaled recursion that does
// not underflow for large t.
double normalized_return(int d, std::size_t t);

struct RadialMoments {
  double mean = 0.0;
  double variance = 0.0;
};
RadialMoments radial_moments(int d, std::size_t t);

// min/max over 1 <= t <= horizon and reachable k of
// P(|X_t| = k) / ((k+1)/t * P(Z_t = (k+t)/2)), Z_t ~ Bin(t, (d-1)/d).
// Entries whose probabilities underflow are skipped.
struct RatioRange {
  double min = 0.0;
  double max = 0.0;
};
RatioRange reflection_ratio_range(const TreeRadialTable& table);

}  // namespace ramlab::walk
