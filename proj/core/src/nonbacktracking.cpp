#include "ramlab/error.hpp"
#include "ramlab/spectral.hpp"

namespace ramlab::spectral {

NonBacktracking::NonBacktracking(const RegularGraph& graph, const DirectedEdgeSpace& edges)
    : graph_(&graph), edges_(&edges) {}

void NonBacktracking::apply(std::span<const double> in, std::span<double> out) const {
  const std::size_t d = static_cast<std::size_t>(graph_->d());
  if (in.size() != size() || out.size() != size()) {
    throw Error(Errc::SpaceMismatch, "vector length differs from the number of directed edges");
  }
  for (std::size_t e = 0; e < size(); ++e) {
    const std::size_t v = edges_->head(static_cast<EdgeId>(e));
    double acc = 0.0;
    for (std::size_t k = 0; k < d; ++k) acc += in[v * d + k];
    out[e] = acc - in[edges_->rev(static_cast<EdgeId>(e))];
  }
}

std::vector<EdgeId> NonBacktracking::successors(EdgeId e) const {
  const int d = graph_->d();
  const Vertex u = edges_->tail(e);
  const Vertex v = edges_->head(e);
  std::vector<EdgeId> out;
  out.reserve(static_cast<std::size_t>(d - 1));
  for (int k = 0; k < d; ++k) {
    const EdgeId f = edges_->id(v, k);
    if (edges_->head(f) != u) out.push_back(f);
  }
  return out;
}

Eigen::MatrixXd NonBacktracking::dense(std::size_t cap) const {
  if (size() > cap) throw Error(Errc::SizeCap, "N = " + std::to_string(size()) + " exceeds the dense cap");
  const auto N = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(N, N);
  for (EdgeId e = 0; e < size(); ++e) {
    for (EdgeId f : successors(e)) b(e, f) = 1.0;
  }
  return b;
}

}  // namespace ramlab::spectral
