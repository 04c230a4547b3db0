#pragma once

#include <cstddef>
#include <functional>

#include <nlohmann/json.hpp>

#include "ramlab/tree.hpp"

// Closed-form predictions and bounds. All logarithms are taken from std::log
// and base-converted; "log n" without a base is the natural logarithm.
namespace ramlab::theory {

double log_base(double x, double base);
// ceil that ignores upward rounding noise below 1e-9 (log_5 5 is 1, not 1+ulp).
long ceil_robust(double x);

// P(Z > x) for a standard normal Z.
double normal_tail(double x);

struct CutoffPrediction {
  int d = 3;
  std::size_t n = 0;
  double t_star = 0.0;  // d/(d-2) log_{d-1} n
  double window = 0.0;  // sqrt(log_{d-1} n)
  double c_d = 0.0;     // (d-2)^{3/2} / (2 sqrt(d(d-1)))
  double rho = 0.0;     // 2 sqrt(d-1) / d

  nlohmann::ordered_json to_json() const;
};

CutoffPrediction cutoff_prediction(std::size_t n, int d);

// P(Z > c_d s).
double profile_value(double s, int d);

// beta log_b(beta/alpha) + (1-beta) log_b((1-beta)/(1-alpha)), 0 log 0 = 0.
double relative_entropy(double beta, double alpha, double base);

struct LpPrediction {
  int d = 3;
  double p = 2.0;
  double beta_star = 0.5;
  double c_dp = 0.0;
  double location = 0.0;  // in steps, for the n passed to lp_prediction

  nlohmann::ordered_json to_json() const;
};

// p in (1, inf]; p = inf is taken as the limit (p-1)/p = 1.
LpPrediction lp_prediction(double p, int d, std::size_t n);
// ((p-1)/p)(2 beta - 1) + H_{d-1}(beta || (d-1)/d).
double lp_objective(double beta, double p, int d);
std::function<double(double)> lp_objective_fn(double p, int d);
// Brute-force minimizer of lp_objective over a uniform grid on [1/2, (d-1)/d].
double lp_grid_minimizer(double p, int d, std::size_t points = 2'000'001);

// n^{(p-1)/p} ||Q^t(root, .)||_p - 1, a lower bound on D_p(t) for any
// d-regular graph on n vertices. table must reach time t.
double lp_lower_bound(const walk::TreeRadialTable& table, std::size_t n, double p, std::size_t t);
double lp_lower_bound(std::size_t n, int d, double p, std::size_t t);
// n^{(p-1)/p} rho^t, an upper bound on D_p(t) for p >= 2 on Ramanujan graphs.
double riesz_thorin_upper(std::size_t n, int d, double p, std::size_t t);

struct SrwLowerProfile {
  double t = 0.0;      // d/(d-2) log_{d-1}(eps n / d)
  double bound = 0.0;  // lower bound on D_tv(t - s sqrt(log_{d-1} n))
};
SrwLowerProfile srw_lower_profile(std::size_t n, int d, double eps, double s);

// ceil(log_{d-1}(dn)) - ceil(log_{d-1}(1/eps)).
long nbrw_tmix_lower(std::size_t n, int d, double eps);

struct DiameterBounds {
  double alon_milman = 0.0;
  long chung = 0;
  long cfm = 0;

  nlohmann::ordered_json to_json() const;
};
// Requires 0 < lambda < d.
DiameterBounds diameter_bounds(std::size_t n, int d, double lambda);

// ceil((1 + 5 sqrt(delta)) log_{d-1} n + 3 log_{d-1} log n).
long weakly_adjusted_time(std::size_t n, int d, double delta);

// 2 d n (d-1)^{-t} (4(d-1)t^2 + 1), a bound on the squared NBRW L^2 distance.
double nbrw_l2_bound(std::size_t n, int d, std::size_t t);
// 8(d-1)/log^2(d-1) + 1.
double nbrw_constant(int d);
// The limit of nbrw_l2_bound * log n at the threshold time as n grows,
// 8d(d-1)/log^2(d-1).
double nbrw_bound_limit(int d);

// ((d-2)/d) log(d-1) - 2 log(d / (2 sqrt(d-1))), positive for d > 2.
double l1_l2_gap(double d);
// (1/2) log_{1/rho} n divided by t_star(n); independent of n.
double l2_l1_location_ratio(double d);

}  // namespace ramlab::theory
