#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "ramlab/error.hpp"
#include "ramlab/spectral.hpp"
#include "ramlab/theory.hpp"

namespace ramlab::spectral {

double ramanujan_bound(int d) { return 2.0 * std::sqrt(d - 1.0); }

double SpectrumReport::max_nontrivial() const {
  double m = 0.0;
  for (double v : nontrivial) m = std::max(m, std::abs(v));
  return m;
}

nlohmann::ordered_json SpectrumReport::to_json() const {
  nlohmann::ordered_json j;
  j["d"] = d;
  j["n"] = n;
  j["bipartite"] = bipartite;
  j["partial"] = partial;
  if (partial) j["ritz_residual"] = ritz_residual;
  j["ramanujan_bound"] = ramanujan_bound(d);
  j["max_nontrivial_abs"] = max_nontrivial();
  j["ramanujan"] = ramanujan;
  j["weak_margin"] = weak_margin;
  j["delta_threshold"] = delta_threshold;
  j["trivial"] = trivial;
  j["exceptional"] = exceptional;
  j["eigenvalue_count"] = eigenvalues.size();
  return j;
}

SpectrumReport report_from_eigenvalues(int d, std::vector<double> eigenvalues,
                                       double delta_threshold) {
  if (d < 3) throw Error(Errc::DegreeTooSmall, "degree must be at least 3");
  std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());
  SpectrumReport r;
  r.d = d;
  r.n = eigenvalues.size();
  r.delta_threshold = delta_threshold;
  r.eigenvalues = eigenvalues;
  const double tol = 1e-8 * d;
  std::size_t lo = 0, hi = eigenvalues.size();
  if (hi > 0 && std::abs(eigenvalues.front() - d) <= tol) {
    r.trivial.push_back(eigenvalues.front());
    lo = 1;
  }
  if (hi > lo && std::abs(eigenvalues.back() + d) <= tol) {
    r.trivial.push_back(eigenvalues.back());
    r.bipartite = true;
    --hi;
  }
  r.nontrivial.assign(eigenvalues.begin() + static_cast<std::ptrdiff_t>(lo),
                      eigenvalues.begin() + static_cast<std::ptrdiff_t>(hi));
  const double bound = ramanujan_bound(d);
  const double top = r.max_nontrivial();
  r.weak_margin = std::max(0.0, top - bound);
  r.ramanujan = top <= bound + kCertificationTolerance;
  for (double v : r.nontrivial) {
    if (std::abs(v) > bound + delta_threshold) r.exceptional.push_back(v);
  }
  return r;
}

Eigen::MatrixXd adjacency_matrix(const RegularGraph& graph, std::size_t dense_cap) {
  const std::size_t n = graph.n();
  if (n > dense_cap) throw Error(Errc::SizeCap, "n = " + std::to_string(n) + " exceeds the dense cap");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : graph.neighbors(u)) a(u, v) = 1.0;
  }
  return a;
}

AdjacencyEigen adjacency_eigensystem(const RegularGraph& graph, std::size_t dense_cap) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency_matrix(graph, dense_cap));
  if (es.info() != Eigen::Success) throw Error(Errc::InvariantViolation, "symmetric eigensolve failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

namespace {

// Lanczos with full reorthogonalization on A restricted to the complement of
// the trivial eigenvectors. Returns the extreme Ritz values and the larger of
// their residual norms.
struct Extremes {
  double top = 0.0;
  double bottom = 0.0;
  double residual = 0.0;
};

Extremes lanczos_extremes(const RegularGraph& graph, std::size_t steps) {
  const std::size_t n = graph.n();
  std::vector<Eigen::VectorXd> deflate;
  deflate.push_back(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / std::sqrt(double(n))));
  if (graph.bipartite()) {
    Eigen::VectorXd s(static_cast<Eigen::Index>(n));
    const auto& sides = *graph.bipartition();
    for (std::size_t v = 0; v < n; ++v) s(static_cast<Eigen::Index>(v)) = sides[v] ? -1.0 : 1.0;
    deflate.push_back(s / std::sqrt(double(n)));
  }
  auto project = [&](Eigen::VectorXd& x) {
    for (const auto& q : deflate) x -= q.dot(x) * q;
  };
  auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    for (Vertex u = 0; u < n; ++u) {
      double acc = 0.0;
      for (Vertex v : graph.neighbors(u)) acc += x(v);
      y(u) = acc;
    }
  };

  const std::size_t m = std::min(steps, n - deflate.size());
  Eigen::MatrixXd Q(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  std::vector<double> alpha, beta;
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd q(static_cast<Eigen::Index>(n));
  for (auto& x : q) x = normal(rng);
  project(q);
  q.normalize();
  Eigen::VectorXd w(static_cast<Eigen::Index>(n));
  double last_beta = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    Q.col(static_cast<Eigen::Index>(j)) = q;
    apply(q, w);
    const double a = q.dot(w);
    alpha.push_back(a);
    // Two passes of classical Gram-Schmidt against all previous vectors.
    for (int pass = 0; pass < 2; ++pass) {
      auto prev = Q.leftCols(static_cast<Eigen::Index>(j + 1));
      w -= prev * (prev.transpose() * w);
      project(w);
    }
    last_beta = w.norm();
    if (j + 1 == m || last_beta < 1e-12) break;
    beta.push_back(last_beta);
    q = w / last_beta;
  }
  const std::size_t k = alpha.size();
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    T(i, i) = alpha[i];
    if (i + 1 < k) T(i, i + 1) = T(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  const auto last = static_cast<Eigen::Index>(k - 1);
  Extremes out;
  out.bottom = vals(0);
  out.top = vals(last);
  out.residual = std::max(std::abs(last_beta * vecs(last, 0)), std::abs(last_beta * vecs(last, last)));
  return out;
}

}  // namespace

SpectrumReport adjacency_spectrum(const RegularGraph& graph, std::size_t dense_cap,
                                  bool require_full, double delta_threshold) {
  const int d = graph.d();
  if (graph.n() <= dense_cap) {
    auto eig = adjacency_eigensystem(graph, dense_cap);
    std::vector<double> values(eig.values.data(), eig.values.data() + eig.values.size());
    return report_from_eigenvalues(d, std::move(values), delta_threshold);
  }
  if (require_full) {
    throw Error(Errc::SizeCap, "full spectrum requested above the dense cap of " + std::to_string(dense_cap));
  }
  const auto ext = lanczos_extremes(graph, 300);
  std::vector<double> values{static_cast<double>(d), ext.top, ext.bottom};
  if (graph.bipartite()) values.push_back(-static_cast<double>(d));
  SpectrumReport r = report_from_eigenvalues(d, std::move(values), delta_threshold);
  r.n = graph.n();
  r.partial = true;
  r.ritz_residual = ext.residual;
  return r;
}

std::string to_string(Certification c) {
  switch (c) {
    case Certification::Ramanujan: return "Ramanujan";
    case Certification::WeaklyRamanujan: return "WeaklyRamanujan";
    case Certification::WeaklyWithExceptions: return "WeaklyWithExceptions";
    case Certification::NotCertified: return "NotCertified";
  }
  return "NotCertified";
}

nlohmann::ordered_json Certificate::to_json() const {
  nlohmann::ordered_json j;
  j["certificate"] = to_string(kind);
  j["delta"] = delta;
  j["exception_count"] = exception_count;
  j["max_exception"] = max_exception;
  j["reason"] = reason;
  return j;
}

Certificate certify(const SpectrumReport& report, const CertifyOptions& options) {
  Certificate c;
  const double d = report.d;
  const double bound = ramanujan_bound(report.d);
  for (double v : report.nontrivial) {
    if (std::abs(v) >= d - 1e-9) {
      c.reason = "nontrivial eigenvalue of modulus d";
      return c;
    }
  }
  if (report.trivial.empty()) {
    c.reason = "no trivial eigenvalue d";
    return c;
  }
  c.delta = report.weak_margin;
  if (report.ramanujan) {
    c.kind = Certification::Ramanujan;
    return c;
  }
  if (c.delta <= options.delta_threshold) {
    c.kind = Certification::WeaklyRamanujan;
    return c;
  }
  // Exceptions beyond the threshold; the rest determines delta.
  double rest = 0.0;
  for (double v : report.nontrivial) {
    const double a = std::abs(v);
    if (a > bound + options.delta_threshold) {
      ++c.exception_count;
      c.max_exception = std::max(c.max_exception, a);
    } else {
      rest = std::max(rest, a);
    }
  }
  c.delta = std::max(0.0, rest - bound);
  if (report.partial) {
    c.reason = "partial spectrum cannot bound the number of exceptions";
    return c;
  }
  if (c.exception_count > options.exceptional_budget) {
    c.reason = "too many exceptional eigenvalues";
    return c;
  }
  if (c.max_exception >= d - options.eps_prime) {
    c.reason = "exceptional eigenvalue too close to d";
    return c;
  }
  c.kind = Certification::WeaklyWithExceptions;
  return c;
}

std::pair<Complex, Complex> theta_pair(double lambda, int d) {
  const double dm1 = d - 1.0;
  if (std::abs(std::abs(lambda) - ramanujan_bound(d)) <= kThresholdTolerance) {
    const Complex root(lambda / 2.0, 0.0);
    return {root, root};
  }
  const double disc = lambda * lambda - 4.0 * dm1;
  if (disc >= 0.0) {
    // Stable pair: the larger-modulus root first, the other from the product.
    const double r1 = (lambda + std::copysign(std::sqrt(disc), lambda)) / 2.0;
    const double r2 = dm1 / r1;
    return r1 >= r2 ? std::pair{Complex(r1), Complex(r2)} : std::pair{Complex(r2), Complex(r1)};
  }
  const double im = std::sqrt(-disc) / 2.0;
  return {Complex(lambda / 2.0, im), Complex(lambda / 2.0, -im)};
}

double alpha_exact(double lambda, int d) {
  if (!(std::abs(lambda) <= d)) throw Error(Errc::LambdaOutOfRange, "need |lambda| <= d");
  if (lambda == d) throw Error(Errc::LambdaOutOfRange, "lambda = d has no 2x2 block");
  if (lambda == -d) return 0.0;
  if (std::abs(lambda) <= ramanujan_bound(d) + kThresholdTolerance) return d - 2.0;
  return std::sqrt(static_cast<double>(d) * d - lambda * lambda);
}

Complex gamma(Complex theta, Complex alpha, std::size_t t) {
  if (t == 0) throw Error(Errc::BadParams, "gamma needs t >= 1");
  const double tt = static_cast<double>(t);
  if (std::abs(theta.imag()) <= 1e-12 * std::max(1.0, std::abs(theta))) {
    return alpha * tt * std::pow(Complex(theta.real()), tt - 1.0);
  }
  const Complex bar = std::conj(theta);
  return alpha * (std::pow(bar, tt) - std::pow(theta, tt)) / (bar - theta);
}

double chebyshev_u(long k_minus_one, double x) {
  if (k_minus_one < 0) return 0.0;
  double prev = 1.0, cur = 2.0 * x;
  if (k_minus_one == 0) return prev;
  for (long j = 1; j < k_minus_one; ++j) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double upsilon(const SpectrumReport& report, long k) {
  const int d = report.d;
  const double scale = ramanujan_bound(d);
  double acc = 0.0;
  for (double v : report.nontrivial) {
    const double u = chebyshev_u(k - 1, v / scale);
    acc += u * u;
  }
  return (d - 2.0) * (d - 2.0) / (d - 1.0) * acc / static_cast<double>(report.n);
}

TransitiveL2 upsilon_l2_transitive(const SpectrumReport& report, double eps) {
  if (report.partial) throw Error(Errc::SizeCap, "needs the full spectrum");
  if (report.bipartite) throw Error(Errc::Bipartite, "graph is bipartite");
  if (!report.ramanujan) throw Error(Errc::NotRamanujan, "graph is not Ramanujan");
  if (!(eps > 0.0)) throw Error(Errc::BadParams, "eps must be positive");
  const double base = report.d - 1.0;
  const double n = static_cast<double>(report.n);
  TransitiveL2 out;
  out.k = std::lround(theory::log_base(n, base));
  out.upsilon = upsilon(report, out.k);
  out.predicted = theory::ceil_robust(theory::log_base(n, base) + theory::log_base(out.upsilon + 2.0, base) +
                                      theory::log_base(1.0 / eps, base));
  return out;
}

}  // namespace ramlab::spectral
