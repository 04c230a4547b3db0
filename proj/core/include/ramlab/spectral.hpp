#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "ramlab/graph.hpp"

namespace ramlab::spectral {

using Complex = std::complex<double>;

inline constexpr std::size_t kDenseCap = 4000;
inline constexpr double kCertificationTolerance = 1e-9;
inline constexpr double kThresholdTolerance = 1e-9;

// 2 sqrt(d-1).
double ramanujan_bound(int d);

struct SpectrumReport {
  int d = 3;
  std::size_t n = 0;
  bool bipartite = false;
  // Partial reports hold the trivial eigenvalues and the extreme nontrivial
  // Ritz values only.
  bool partial = false;
  double ritz_residual = 0.0;
  std::vector<double> eigenvalues;  // descending
  std::vector<double> trivial;      // {d} or {d, -d}
  std::vector<double> nontrivial;   // descending
  bool ramanujan = false;
  double weak_margin = 0.0;  // max(0, max nontrivial |lambda| - 2 sqrt(d-1))
  double delta_threshold = 0.3;
  std::vector<double> exceptional;  // |lambda| > 2 sqrt(d-1) + delta_threshold

  double max_nontrivial() const;
  nlohmann::ordered_json to_json() const;
};

// Builds the certification fields from a list of eigenvalues. The trivial
// eigenvalue d (and -d when present) is removed once each.
SpectrumReport report_from_eigenvalues(int d, std::vector<double> eigenvalues,
                                       double delta_threshold = 0.3);

// Dense symmetric solve up to dense_cap vertices; above it, Lanczos on the
// complement of the trivial eigenvectors unless require_full (SizeCap).
SpectrumReport adjacency_spectrum(const RegularGraph& graph, std::size_t dense_cap = kDenseCap,
                                  bool require_full = false, double delta_threshold = 0.3);

// Orthonormal eigenvectors of the adjacency matrix, eigenvalues ascending.
struct AdjacencyEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};
AdjacencyEigen adjacency_eigensystem(const RegularGraph& graph, std::size_t dense_cap = kDenseCap);
Eigen::MatrixXd adjacency_matrix(const RegularGraph& graph, std::size_t dense_cap = kDenseCap);

enum class Certification { Ramanujan, WeaklyRamanujan, WeaklyWithExceptions, NotCertified };
std::string to_string(Certification c);

struct CertifyOptions {
  double delta_threshold = 0.3;
  std::size_t exceptional_budget = 0;
  double eps_prime = 0.05;  // exceptions must satisfy |lambda| < d - eps_prime
};

struct Certificate {
  Certification kind = Certification::NotCertified;
  double delta = 0.0;
  std::size_t exception_count = 0;
  double max_exception = 0.0;
  std::string reason;

  nlohmann::ordered_json to_json() const;
};

Certificate certify(const SpectrumReport& report, const CertifyOptions& options = {});

// Roots of theta^2 - lambda theta + (d-1) = 0, ordered by (real, imag)
// descending. Within kThresholdTolerance of |lambda| = 2 sqrt(d-1) the double
// root lambda/2 is returned twice.
std::pair<Complex, Complex> theta_pair(double lambda, int d);

// |alpha| predicted from lambda alone.
double alpha_exact(double lambda, int d);

// alpha * sum_{j<t} theta^j conj(theta)^{t-1-j}.
Complex gamma(Complex theta, Complex alpha, std::size_t t);

// The nonbacktracking matrix B on directed edges, B[(u,v),(x,y)] = [v = x, u != y].
class NonBacktracking {
 public:
  NonBacktracking(const RegularGraph& graph, const DirectedEdgeSpace& edges);

  std::size_t size() const noexcept { return edges_->size(); }
  // out = B in (column action: out(e) = sum over successors f of in(f)).
  void apply(std::span<const double> in, std::span<double> out) const;
  std::vector<EdgeId> successors(EdgeId e) const;
  Eigen::MatrixXd dense(std::size_t cap = kDenseCap) const;

 private:
  const RegularGraph* graph_;
  const DirectedEdgeSpace* edges_;
};

struct Block {
  enum class Kind { Principal, BipartitePrincipal, Pair, Jordan };
  Kind kind = Kind::Pair;
  double lambda = 0.0;
  Complex theta;
  Complex theta_prime;
  Complex alpha;
  std::size_t column = 0;  // first column of the block in U
  std::size_t size = 2;
};

std::string to_string(Block::Kind kind);

struct BlockDecomposition {
  int d = 3;
  std::size_t n = 0;
  std::size_t N = 0;
  bool bipartite = false;
  std::vector<Block> blocks;
  std::size_t minus_one_count = 0;
  std::size_t plus_one_count = 0;
  std::size_t minus_one_column = 0;  // first column of the -1 space
  std::size_t plus_one_column = 0;
  Eigen::MatrixXcd U;

  Eigen::MatrixXcd lambda_matrix() const;
};

BlockDecomposition build_decomposition(const RegularGraph& graph, const DirectedEdgeSpace& edges,
                                       const AdjacencyEigen& eigen, std::size_t dense_cap = kDenseCap);

// Star-space ranks: (rank of the oriented incidence, rank of the unoriented one).
std::pair<std::size_t, std::size_t> star_ranks(const RegularGraph& graph);

struct VerificationReport {
  double reconstruction = 0.0;   // max |B - U Lambda U*|
  double unitarity = 0.0;        // max |U*U - I|
  double bass_mismatch = 0.0;    // largest matched distance; inf if unmatched
  std::size_t bass_unmatched = 0;
  double bbstar_entry = 0.0;     // max deviation from the three-case formula
  double operator_norm = 0.0;    // sqrt of the top eigenvalue of BB*
  double alpha_mismatch = 0.0;   // max ||alpha| - alpha_exact|
  double theta_residual = 0.0;   // max |theta^2 - lambda theta + d - 1|
  double parseval = 0.0;         // max |row norm^2 - 1|
  bool multiplicities_ok = false;
  bool passed = false;
  std::string failure;

  nlohmann::ordered_json to_json() const;
};

struct VerifyTolerances {
  double reconstruction = 1e-8;
  double unitarity = 1e-10;
  double bass = 1e-6;
  double alpha = 1e-8;
};

// Fills the report; throws VerificationFailed naming the first failing check
// when throw_on_failure.
VerificationReport verify_decomposition(const Eigen::MatrixXd& b_dense,
                                        const BlockDecomposition& decomposition,
                                        const VerifyTolerances& tol = {},
                                        bool throw_on_failure = false);

// (d-2)^2/(d-1) * (1/n) sum over nontrivial eigenvalues of U_{k-1}(lambda/(2 sqrt(d-1)))^2
// with U_{k-1}(cos x) = sin(kx)/sin x.
double upsilon(const SpectrumReport& report, long k);
double chebyshev_u(long k_minus_one, double x);

struct TransitiveL2 {
  long k = 0;
  double upsilon = 0.0;
  long predicted = 0;
};

// Predicted NBRW L^2 mixing time (in the squared-distance sense) for a
// vertex-transitive non-bipartite Ramanujan graph.
TransitiveL2 upsilon_l2_transitive(const SpectrumReport& report, double eps);

}  // namespace ramlab::spectral
