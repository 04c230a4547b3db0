#include <algorithm>
#include <cmath>
#include <limits>

#include "ramlab/error.hpp"
#include "ramlab/theory.hpp"

namespace ramlab::theory {

namespace {

void check_degree(int d) {
  if (d < 3) throw Error(Errc::DegreeTooSmall, "degree must be at least 3");
}

double exponent_ratio(double p) { return std::isinf(p) ? 1.0 : (p - 1.0) / p; }

}  // namespace

double log_base(double x, double base) { return std::log(x) / std::log(base); }

long ceil_robust(double x) { return static_cast<long>(std::ceil(x - 1e-9)); }

double normal_tail(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

CutoffPrediction cutoff_prediction(std::size_t n, int d) {
  check_degree(d);
  if (n < 2) throw Error(Errc::BadParams, "n must be at least 2");
  CutoffPrediction c;
  c.d = d;
  c.n = n;
  const double L = log_base(static_cast<double>(n), d - 1.0);
  c.t_star = d / (d - 2.0) * L;
  c.window = std::sqrt(L);
  c.c_d = std::pow(d - 2.0, 1.5) / (2.0 * std::sqrt(d * (d - 1.0)));
  c.rho = 2.0 * std::sqrt(d - 1.0) / d;
  return c;
}

nlohmann::ordered_json CutoffPrediction::to_json() const {
  return {{"d", d}, {"n", n}, {"t_star", t_star}, {"window", window}, {"c_d", c_d}, {"rho", rho}};
}

double profile_value(double s, int d) {
  check_degree(d);
  const double c_d = std::pow(d - 2.0, 1.5) / (2.0 * std::sqrt(d * (d - 1.0)));
  return normal_tail(c_d * s);
}

double relative_entropy(double beta, double alpha, double base) {
  if (!(beta >= 0.0 && beta <= 1.0 && alpha >= 0.0 && alpha <= 1.0) || !(base > 1.0)) {
    throw Error(Errc::BadParams, "relative entropy needs beta, alpha in [0,1] and base > 1");
  }
  auto term = [&](double b, double a) {
    if (b == 0.0) return 0.0;
    if (a == 0.0) throw Error(Errc::AlphaDegenerate, "alpha at the boundary with beta != alpha");
    return b * std::log(b / a);
  };
  return (term(beta, alpha) + term(1.0 - beta, 1.0 - alpha)) / std::log(base);
}

double lp_objective(double beta, double p, int d) {
  return exponent_ratio(p) * (2.0 * beta - 1.0) +
         relative_entropy(beta, (d - 1.0) / d, d - 1.0);
}

std::function<double(double)> lp_objective_fn(double p, int d) {
  return [p, d](double beta) { return lp_objective(beta, p, d); };
}

LpPrediction lp_prediction(double p, int d, std::size_t n) {
  check_degree(d);
  if (!(p > 1.0)) throw Error(Errc::POutOfRange, "p must lie in (1, inf]");
  LpPrediction out;
  out.d = d;
  out.p = p;
  const double r = exponent_ratio(p);
  // (p-2)/p = 1 - 2/p; at p = inf it is 1.
  const double e = std::isinf(p) ? 1.0 : (p - 2.0) / p;
  out.beta_star = std::max(1.0 / (std::pow(d - 1.0, e) + 1.0), 0.5);
  out.c_dp = 1.0 / (2.0 * out.beta_star - 1.0 +
                    relative_entropy(out.beta_star, (d - 1.0) / d, d - 1.0) / r);
  const double rho = 2.0 * std::sqrt(d - 1.0) / d;
  const double ln_n = std::log(static_cast<double>(n));
  out.location = p <= 2.0 ? out.c_dp * ln_n / std::log(d - 1.0) : r * ln_n / std::log(1.0 / rho);
  return out;
}

nlohmann::ordered_json LpPrediction::to_json() const {
  nlohmann::ordered_json j;
  j["d"] = d;
  if (std::isinf(p)) {
    j["p"] = "inf";
  } else {
    j["p"] = p;
  }
  j["beta_star"] = beta_star;
  j["c_dp"] = c_dp;
  j["location"] = location;
  return j;
}

double lp_grid_minimizer(double p, int d, std::size_t points) {
  check_degree(d);
  if (points < 2) throw Error(Errc::BadParams, "grid needs at least two points");
  const double lo = 0.5;
  const double hi = (d - 1.0) / d;
  double best_beta = lo;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points; ++i) {
    const double beta = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    const double v = lp_objective(beta, p, d);
    if (v < best) {
      best = v;
      best_beta = beta;
    }
  }
  return best_beta;
}

double lp_lower_bound(const walk::TreeRadialTable& table, std::size_t n, double p, std::size_t t) {
  if (!(p >= 1.0)) throw Error(Errc::POutOfRange, "p must lie in [1, inf]");
  const double norm = table.lp_norm(t, p);
  return std::pow(static_cast<double>(n), exponent_ratio(p)) * norm - 1.0;
}

double lp_lower_bound(std::size_t n, int d, double p, std::size_t t) {
  return lp_lower_bound(walk::tree_radial(d, t), n, p, t);
}

double riesz_thorin_upper(std::size_t n, int d, double p, std::size_t t) {
  const double rho = 2.0 * std::sqrt(d - 1.0) / d;
  return std::pow(static_cast<double>(n), exponent_ratio(p)) * std::pow(rho, static_cast<double>(t));
}

SrwLowerProfile srw_lower_profile(std::size_t n, int d, double eps, double s) {
  check_degree(d);
  if (!(eps > 0.0 && eps < 1.0)) throw Error(Errc::BadParams, "eps must lie in (0, 1)");
  SrwLowerProfile out;
  out.t = d / (d - 2.0) * log_base(eps * static_cast<double>(n) / d, d - 1.0);
  out.bound = 1.0 - eps - profile_value(s, d);
  return out;
}

long nbrw_tmix_lower(std::size_t n, int d, double eps) {
  check_degree(d);
  if (!(eps > 0.0 && eps <= 1.0)) throw Error(Errc::BadParams, "eps must lie in (0, 1]");
  return ceil_robust(log_base(static_cast<double>(d) * static_cast<double>(n), d - 1.0)) -
         ceil_robust(log_base(1.0 / eps, d - 1.0));
}

DiameterBounds diameter_bounds(std::size_t n, int d, double lambda) {
  check_degree(d);
  if (!(lambda > 0.0 && lambda < d)) throw Error(Errc::LambdaOutOfRange, "need 0 < lambda < d");
  DiameterBounds b;
  const double nn = static_cast<double>(n);
  b.alon_milman = 2.0 * std::sqrt(2.0 * d / (d - lambda)) * std::log2(nn);
  b.chung = ceil_robust(log_base(nn - 1.0, d / lambda));
  auto acosh_guarded = [](double x) { return x < 1.0 + 1e-12 ? 0.0 : std::acosh(x); };
  const double denom = acosh_guarded(d / lambda);
  if (denom == 0.0) throw Error(Errc::LambdaOutOfRange, "lambda too close to d");
  b.cfm = static_cast<long>(std::floor(acosh_guarded(nn - 1.0) / denom)) + 1;
  return b;
}

nlohmann::ordered_json DiameterBounds::to_json() const {
  return {{"alon_milman", alon_milman}, {"chung", chung}, {"cfm_bound", cfm}};
}

long weakly_adjusted_time(std::size_t n, int d, double delta) {
  check_degree(d);
  if (!(delta >= 0.0)) throw Error(Errc::BadParams, "delta must be nonnegative");
  const double nn = static_cast<double>(n);
  return ceil_robust((1.0 + 5.0 * std::sqrt(delta)) * log_base(nn, d - 1.0) +
                     3.0 * log_base(std::log(nn), d - 1.0));
}

double nbrw_l2_bound(std::size_t n, int d, std::size_t t) {
  const double tt = static_cast<double>(t);
  return 2.0 * d * static_cast<double>(n) * std::pow(d - 1.0, -tt) *
         (4.0 * (d - 1.0) * tt * tt + 1.0);
}

double nbrw_constant(int d) {
  const double l = std::log(d - 1.0);
  return 8.0 * (d - 1.0) / (l * l) + 1.0;
}

double nbrw_bound_limit(int d) {
  const double l = std::log(d - 1.0);
  return 8.0 * d * (d - 1.0) / (l * l);
}

double l1_l2_gap(double d) {
  if (!(d > 2.0)) throw Error(Errc::BadParams, "need d > 2");
  return (d - 2.0) / d * std::log(d - 1.0) - 2.0 * std::log(d / (2.0 * std::sqrt(d - 1.0)));
}

double l2_l1_location_ratio(double d) {
  if (!(d > 2.0)) throw Error(Errc::BadParams, "need d > 2");
  const double rho = 2.0 * std::sqrt(d - 1.0) / d;
  return (d - 2.0) * std::log(d - 1.0) / (2.0 * d * std::log(1.0 / rho));
}

}  // namespace ramlab::theory
