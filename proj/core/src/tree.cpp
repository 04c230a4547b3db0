#include <algorithm>
#include <cmath>
#include <limits>

#include "ramlab/error.hpp"
#include "ramlab/tree.hpp"

namespace ramlab::walk {

namespace {

void check_degree(int d) {
  if (d < 3) throw Error(Errc::DegreeTooSmall, "tree degree must be at least 3");
}

// One step of the reflected biased walk; next must have room for k = 0..cur.size().
void radial_step(int d, const std::vector<double>& cur, std::vector<double>& next) {
  const double up = static_cast<double>(d - 1) / d;
  const double down = 1.0 / d;
  std::fill(next.begin(), next.end(), 0.0);
  for (std::size_t k = 0; k < cur.size(); ++k) {
    const double m = cur[k];
    if (m == 0.0) continue;
    if (k == 0) {
      next[1] += m;
    } else {
      next[k + 1] += up * m;
      next[k - 1] += down * m;
    }
  }
}

}  // namespace

double TreeRadialTable::probability(std::size_t t, std::size_t k) const {
  if (t >= rows.size()) throw Error(Errc::BadParams, "time beyond tree horizon");
  return k < rows[t].size() ? rows[t][k] : 0.0;
}

double TreeRadialTable::lp_norm(std::size_t t, double p) const {
  if (t >= rows.size()) throw Error(Errc::BadParams, "time beyond tree horizon");
  const auto& row = rows[t];
  const double log_branch = std::log(static_cast<double>(d - 1));
  auto log_sphere = [&](std::size_t k) {
    return k == 0 ? 0.0 : std::log(static_cast<double>(d)) + (k - 1.0) * log_branch;
  };
  if (std::isinf(p)) {
    double best = 0.0;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k] > 0.0) best = std::max(best, std::exp(std::log(row[k]) - log_sphere(k)));
    }
    return best;
  }
  // Sum of S_k^{1-p} P_k^p in log space to stay clear of underflow.
  std::vector<double> terms;
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k] > 0.0) terms.push_back((1.0 - p) * log_sphere(k) + p * std::log(row[k]));
  }
  if (terms.empty()) return 0.0;
  const double top = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double v : terms) acc += std::exp(v - top);
  return std::exp((top + std::log(acc)) / p);
}

TreeRadialTable tree_radial(int d, std::size_t horizon) {
  check_degree(d);
  TreeRadialTable table;
  table.d = d;
  table.horizon = horizon;
  table.rows.reserve(horizon + 1);
  table.rows.push_back({1.0});
  for (std::size_t t = 0; t < horizon; ++t) {
    std::vector<double> next(t + 2, 0.0);
    radial_step(d, table.rows[t], next);
    table.rows.push_back(std::move(next));
  }
  return table;
}

std::vector<double> tree_radial_row(int d, std::size_t t) {
  check_degree(d);
  std::vector<double> live{1.0}, next;
  for (std::size_t s = 0; s < t; ++s) {
    next.assign(s + 2, 0.0);
    radial_step(d, live, next);
    live.swap(next);
  }
  return live;
}

double normalized_return(int d, std::size_t t) {
  check_degree(d);
  // g_s(k) = P_s(k) / (rho^s (d-1)^{k/2}) obeys g_{s+1}(k) = g_s(k-1)/2 + g_s(k+1)/2,
  // except that mass leaving 0 is scaled by d / (2(d-1)).
  const double from_root = d / (2.0 * (d - 1));
  const std::size_t steps = 2 * t;
  std::vector<double> g{1.0}, next;
  for (std::size_t s = 0; s < steps; ++s) {
    next.assign(g.size() + 1, 0.0);
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (g[k] == 0.0) continue;
      if (k == 0) {
        next[1] += from_root * g[0];
      } else {
        next[k + 1] += 0.5 * g[k];
        next[k - 1] += 0.5 * g[k];
      }
    }
    // Mass beyond the remaining number of steps cannot return to 0.
    const std::size_t reach = steps - s - 1;
    if (next.size() > reach + 1) next.resize(reach + 1);
    g.swap(next);
  }
  return g[0];
}

RadialMoments radial_moments(int d, std::size_t t) {
  auto row = tree_radial_row(d, t);
  double mean = 0.0, second = 0.0;
  for (std::size_t k = 0; k < row.size(); ++k) {
    mean += k * row[k];
    second += static_cast<double>(k) * k * row[k];
  }
  return {mean, second - mean * mean};
}

RatioRange reflection_ratio_range(const TreeRadialTable& table) {
  const double up = static_cast<double>(table.d - 1) / table.d;
  const double log_up = std::log(up);
  const double log_down = std::log(1.0 - up);
  RatioRange range{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t t = 1; t < table.rows.size(); ++t) {
    const auto& row = table.rows[t];
    for (std::size_t k = t % 2; k <= t; k += 2) {
      if (row[k] < std::numeric_limits<double>::min()) continue;
      const double j = (k + t) / 2.0;
      const double log_binom = std::lgamma(t + 1.0) - std::lgamma(j + 1.0) -
                               std::lgamma(t - j + 1.0) + j * log_up + (t - j) * log_down;
      const double log_ratio =
          std::log(row[k]) - (std::log(k + 1.0) - std::log(static_cast<double>(t)) + log_binom);
      const double ratio = std::exp(log_ratio);
      range.min = std::min(range.min, ratio);
      range.max = std::max(range.max, ratio);
    }
  }
  return range;
}

}  // namespace ramlab::walk
