#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "ramlab/error.hpp"
#include "ramlab/spectral.hpp"

namespace ramlab::spectral {

std::string to_string(Block::Kind kind) {
  switch (kind) {
    case Block::Kind::Principal: return "principal";
    case Block::Kind::BipartitePrincipal: return "bipartite_principal";
    case Block::Kind::Pair: return "pair";
    case Block::Kind::Jordan: return "jordan";
  }
  return "pair";
}

Eigen::MatrixXcd BlockDecomposition::lambda_matrix() const {
  const auto n_ = static_cast<Eigen::Index>(N);
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(n_, n_);
  for (const auto& b : blocks) {
    const auto c = static_cast<Eigen::Index>(b.column);
    L(c, c) = b.theta;
    if (b.size == 2) {
      L(c, c + 1) = b.alpha;
      L(c + 1, c + 1) = b.theta_prime;
    }
  }
  for (std::size_t i = 0; i < minus_one_count; ++i) {
    const auto c = static_cast<Eigen::Index>(minus_one_column + i);
    L(c, c) = -1.0;
  }
  for (std::size_t i = 0; i < plus_one_count; ++i) {
    const auto c = static_cast<Eigen::Index>(plus_one_column + i);
    L(c, c) = 1.0;
  }
  return L;
}

namespace {

// Incidence matrix transposed (edges x vertices); oriented gives +1 at the
// smaller endpoint and -1 at the larger.
Eigen::MatrixXd incidence_transpose(const RegularGraph& graph, const std::vector<Edge>& undirected,
                                    bool oriented) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(undirected.size()),
                                            static_cast<Eigen::Index>(graph.n()));
  for (std::size_t i = 0; i < undirected.size(); ++i) {
    const auto [u, v] = undirected[i];
    m(static_cast<Eigen::Index>(i), u) = 1.0;
    m(static_cast<Eigen::Index>(i), v) = oriented ? -1.0 : 1.0;
  }
  return m;
}

// Orthonormal basis of the kernel of M (the orthogonal complement of the
// column space of M^T), together with rank(M).
std::pair<Eigen::MatrixXd, std::size_t> kernel_basis(const Eigen::MatrixXd& mt) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(mt);
  const auto rank = qr.rank();
  Eigen::MatrixXd q = qr.householderQ();
  return {q.rightCols(mt.rows() - rank), static_cast<std::size_t>(rank)};
}

}  // namespace

std::pair<std::size_t, std::size_t> star_ranks(const RegularGraph& graph) {
  const auto undirected = graph.edges();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> minus(incidence_transpose(graph, undirected, true));
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> plus(incidence_transpose(graph, undirected, false));
  return {static_cast<std::size_t>(minus.rank()), static_cast<std::size_t>(plus.rank())};
}

BlockDecomposition build_decomposition(const RegularGraph& graph, const DirectedEdgeSpace& edges,
                                       const AdjacencyEigen& eigen, std::size_t dense_cap) {
  const std::size_t n = graph.n();
  const int d = graph.d();
  const std::size_t N = edges.size();
  if (N > dense_cap) throw Error(Errc::SizeCap, "N = " + std::to_string(N) + " exceeds the dense cap");
  if (static_cast<std::size_t>(eigen.values.size()) != n ||
      static_cast<std::size_t>(eigen.vectors.cols()) != n) {
    throw Error(Errc::SpaceMismatch, "eigensystem size differs from the graph");
  }
  const auto nn = static_cast<Eigen::Index>(n);
  const double orth =
      (eigen.vectors.transpose() * eigen.vectors - Eigen::MatrixXd::Identity(nn, nn)).cwiseAbs().maxCoeff();
  if (orth > 1e-10) {
    throw Error(Errc::EigenbasisNotOrthonormal,
                "adjacency eigenvectors deviate from orthonormal by " + std::to_string(orth));
  }

  BlockDecomposition dec;
  dec.d = d;
  dec.n = n;
  dec.N = N;
  dec.bipartite = graph.bipartite();
  const auto NN = static_cast<Eigen::Index>(N);
  dec.U = Eigen::MatrixXcd::Zero(NN, NN);
  Eigen::Index col = 0;

  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(N));
  dec.U.col(col).setConstant(inv_sqrt_n);
  dec.blocks.push_back({Block::Kind::Principal, static_cast<double>(d), Complex(d - 1.0),
                        Complex(d - 1.0), Complex(0.0), 0, 1});
  ++col;
  if (dec.bipartite) {
    const auto& sides = *graph.bipartition();
    for (EdgeId e = 0; e < N; ++e) dec.U(e, col) = sides[edges.tail(e)] ? -inv_sqrt_n : inv_sqrt_n;
    dec.blocks.push_back({Block::Kind::BipartitePrincipal, -static_cast<double>(d), Complex(1.0 - d),
                          Complex(1.0 - d), Complex(0.0), static_cast<std::size_t>(col), 1});
    ++col;
  }

  // Nontrivial eigenpairs, largest eigenvalue first. Eigen sorts ascending:
  // index n-1 is d and, for bipartite graphs, index 0 is -d.
  const Eigen::Index first = dec.bipartite ? 1 : 0;
  Eigen::VectorXcd head(NN), tail(NN);
  for (Eigen::Index i = nn - 2; i >= first; --i) {
    const double lambda = eigen.values(i);
    const auto f = eigen.vectors.col(i);
    for (EdgeId e = 0; e < N; ++e) {
      head(e) = f(edges.head(e));
      tail(e) = f(edges.tail(e));
    }
    auto [theta, theta_p] = theta_pair(lambda, d);
    const bool jordan = theta == theta_p;
    // (T_theta f)(x, y) = theta f(y) - f(x).
    const Eigen::VectorXcd t_theta = theta * head - tail;
    const double t_norm = t_theta.norm();
    const Eigen::VectorXcd w = t_theta / t_norm;
    const Eigen::VectorXcd v = jordan ? Eigen::VectorXcd(t_theta + head) : Eigen::VectorXcd(theta_p * head - tail);
    const double v_norm = v.norm();
    const Eigen::VectorXcd v_hat = v / v_norm;
    const Complex beta = w.dot(v_hat);
    const double s = std::sqrt(std::max(0.0, 1.0 - std::norm(beta)));
    if (s < 1e-14) throw Error(Errc::InvariantViolation, "degenerate pair at lambda = " + std::to_string(lambda));
    const Eigen::VectorXcd w2 = (v_hat - beta * w) / s;
    const Complex alpha = jordan ? Complex(t_norm / (v_norm * s)) : beta * (theta_p - theta) / s;
    dec.U.col(col) = w;
    dec.U.col(col + 1) = w2;
    dec.blocks.push_back({jordan ? Block::Kind::Jordan : Block::Kind::Pair, lambda, theta, theta_p, alpha,
                          static_cast<std::size_t>(col), 2});
    col += 2;
  }

  // -1: symmetric functions with zero sum around every vertex; +1: the
  // antisymmetric analogue. Coordinates are per undirected edge, spread as
  // a / sqrt(2) over its two orientations.
  const auto undirected = graph.edges();
  const double r2 = 1.0 / std::sqrt(2.0);
  auto place = [&](const Eigen::MatrixXd& basis, bool antisymmetric) {
    for (Eigen::Index j = 0; j < basis.cols(); ++j, ++col) {
      for (std::size_t k = 0; k < undirected.size(); ++k) {
        const auto [u, v] = undirected[k];
        const double a = basis(static_cast<Eigen::Index>(k), j) * r2;
        dec.U(edges.id(u, *graph.neighbor_rank(u, v)), col) = a;
        dec.U(edges.id(v, *graph.neighbor_rank(v, u)), col) = antisymmetric ? -a : a;
      }
    }
  };
  const Eigen::MatrixXd minus_basis = kernel_basis(incidence_transpose(graph, undirected, false)).first;
  const Eigen::MatrixXd plus_basis = kernel_basis(incidence_transpose(graph, undirected, true)).first;
  dec.minus_one_column = static_cast<std::size_t>(col);
  dec.minus_one_count = static_cast<std::size_t>(minus_basis.cols());
  place(minus_basis, false);
  dec.plus_one_column = static_cast<std::size_t>(col);
  dec.plus_one_count = static_cast<std::size_t>(plus_basis.cols());
  place(plus_basis, true);

  if (static_cast<std::size_t>(col) != N) {
    throw Error(Errc::InvariantViolation, "decomposition produced " + std::to_string(col) +
                                              " columns for N = " + std::to_string(N));
  }
  return dec;
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["reconstruction"] = reconstruction;
  j["unitarity"] = unitarity;
  j["bass_mismatch"] = std::isinf(bass_mismatch) ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(bass_mismatch);
  j["bass_unmatched"] = bass_unmatched;
  j["bbstar_entry"] = bbstar_entry;
  j["operator_norm"] = operator_norm;
  j["alpha_mismatch"] = alpha_mismatch;
  j["theta_residual"] = theta_residual;
  j["parseval"] = parseval;
  j["multiplicities_ok"] = multiplicities_ok;
  j["passed"] = passed;
  j["failure"] = failure;
  return j;
}

VerificationReport verify_decomposition(const Eigen::MatrixXd& b_dense,
                                        const BlockDecomposition& dec,
                                        const VerifyTolerances& tol, bool throw_on_failure) {
  const auto NN = static_cast<Eigen::Index>(dec.N);
  if (b_dense.rows() != NN || b_dense.cols() != NN || dec.U.rows() != NN) {
    throw Error(Errc::SpaceMismatch, "B and U have different sizes");
  }
  VerificationReport r;
  const Eigen::MatrixXcd Bc = b_dense.cast<Complex>();
  const Eigen::MatrixXcd L = dec.lambda_matrix();
  r.reconstruction = (Bc - dec.U * L * dec.U.adjoint()).cwiseAbs().maxCoeff();
  r.unitarity = (dec.U.adjoint() * dec.U - Eigen::MatrixXcd::Identity(NN, NN)).cwiseAbs().maxCoeff();
  r.parseval = (dec.U.rowwise().squaredNorm().array() - 1.0).abs().maxCoeff();

  const std::size_t half = dec.N / 2;
  const std::size_t plus_expected = half - dec.n + 1;
  const std::size_t minus_expected = dec.bipartite ? half - dec.n + 1 : half - dec.n;
  r.multiplicities_ok = dec.plus_one_count == plus_expected && dec.minus_one_count == minus_expected;

  // Bass: eigenvalues of B against the blocks' diagonal.
  std::vector<Complex> expected;
  for (const auto& b : dec.blocks) {
    expected.push_back(b.theta);
    if (b.size == 2) expected.push_back(b.theta_prime);
    if (b.size == 2) {
      r.alpha_mismatch = std::max(r.alpha_mismatch, std::abs(std::abs(b.alpha) - alpha_exact(b.lambda, dec.d)));
    }
    for (Complex th : {b.theta, b.theta_prime}) {
      r.theta_residual = std::max(r.theta_residual, std::abs(th * th - b.lambda * th + (dec.d - 1.0)));
    }
  }
  expected.insert(expected.end(), dec.minus_one_count, Complex(-1.0));
  expected.insert(expected.end(), dec.plus_one_count, Complex(1.0));
  Eigen::EigenSolver<Eigen::MatrixXd> es(b_dense, false);
  std::vector<Complex> computed(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::vector<bool> used(computed.size(), false);
  for (const Complex& e : expected) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t at = computed.size();
    for (std::size_t i = 0; i < computed.size(); ++i) {
      if (used[i]) continue;
      const double dist = std::abs(computed[i] - e);
      if (dist < best) {
        best = dist;
        at = i;
      }
    }
    if (at == computed.size() || best > tol.bass) {
      ++r.bass_unmatched;
      r.bass_mismatch = std::numeric_limits<double>::infinity();
      continue;
    }
    used[at] = true;
    r.bass_mismatch = std::max(r.bass_mismatch, best);
  }

  // BB* has d-1 on the diagonal, d-2 between distinct edges sharing a head
  // and 0 elsewhere. The head of e is the tail of any successor.
  const Eigen::MatrixXd bbt = b_dense * b_dense.transpose();
  std::vector<Eigen::Index> head(dec.N);
  for (Eigen::Index e = 0; e < NN; ++e) {
    Eigen::Index f = 0;
    b_dense.row(e).maxCoeff(&f);
    head[static_cast<std::size_t>(e)] = f / dec.d;
  }
  for (Eigen::Index e = 0; e < NN; ++e) {
    for (Eigen::Index f = 0; f < NN; ++f) {
      const double want = e == f ? dec.d - 1.0
                          : head[static_cast<std::size_t>(e)] == head[static_cast<std::size_t>(f)] ? dec.d - 2.0
                                                                                                  : 0.0;
      r.bbstar_entry = std::max(r.bbstar_entry, std::abs(bbt(e, f) - want));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> bes(bbt, Eigen::EigenvaluesOnly);
  r.operator_norm = std::sqrt(bes.eigenvalues().maxCoeff());

  auto fail = [&](const char* what) {
    if (r.failure.empty()) r.failure = what;
  };
  if (!(r.reconstruction <= tol.reconstruction)) fail("reconstruction");
  if (!(r.unitarity <= tol.unitarity)) fail("unitarity");
  if (!r.multiplicities_ok) fail("multiplicities");
  if (r.bass_unmatched > 0) fail("bass");
  if (!(r.bbstar_entry <= 1e-12)) fail("bbstar");
  if (!(std::abs(r.operator_norm - (dec.d - 1.0)) <= 1e-8)) fail("operator_norm");
  if (!(r.alpha_mismatch <= tol.alpha)) fail("alpha");
  if (!(r.parseval <= tol.unitarity)) fail("parseval");
  r.passed = r.failure.empty();
  if (throw_on_failure && !r.passed) {
    throw Error(Errc::VerificationFailed, "decomposition check failed: " + r.failure);
  }
  return r;
}

}  // namespace ramlab::spectral
