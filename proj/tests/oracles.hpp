#pragma once

// Test-only oracles, kept independent of the solver paths they check.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "tvsyn/graph.hpp"
#include "tvsyn/random.hpp"

namespace oracles {

// Proximal gradient (ISTA) for the partially penalized lasso
//   min ||y - Z b||_n^2 + 2*lambda*||b_pen||_1.
inline double ista_objective(const Eigen::VectorXd& y, const Eigen::MatrixXd& design,
                             const std::vector<bool>& penalized, double lambda,
                             long iterations) {
  const double n = static_cast<double>(y.size());
  const Eigen::MatrixXd gram = design.transpose() * design;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(gram);
  const double lipschitz = 2.0 / n * eigen.eigenvalues().maxCoeff();
  const double step = 1.0 / lipschitz;
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(design.cols());
  for (long t = 0; t < iterations; ++t) {
    const Eigen::VectorXd grad =
        -(2.0 / n) * (design.transpose() * (y - design * beta));
    beta -= step * grad;
    const double threshold = step * 2.0 * lambda;
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
      if (!penalized[static_cast<std::size_t>(j)]) continue;
      if (beta(j) > threshold)
        beta(j) -= threshold;
      else if (beta(j) < -threshold)
        beta(j) += threshold;
      else
        beta(j) = 0.0;
    }
  }
  double penalty = 0.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j)
    if (penalized[static_cast<std::size_t>(j)]) penalty += std::abs(beta(j));
  return (y - design * beta).squaredNorm() / n + 2.0 * lambda * penalty;
}

inline Eigen::VectorXd gaussian_vector(int n, std::uint64_t seed) {
  tvsyn::SplitMix64 rng(seed);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y(i) = rng.next_gaussian();
  return y;
}

// Random connected graph with m <= max_edges, for the matrix-tree cross-check.
inline tvsyn::DirectedGraph random_connected_graph(std::uint64_t seed, int max_edges) {
  tvsyn::SplitMix64 rng(seed);
  while (true) {
    const int n = rng.next_int(4, 7);
    std::vector<std::pair<int, int>> edges;
    // random spanning tree first
    for (int v = 2; v <= n; ++v) edges.emplace_back(rng.next_int(1, v - 1), v);
    const int extra = rng.next_int(0, std::min(4, max_edges - (n - 1)));
    for (int e = 0; e < extra; ++e) {
      const int a = rng.next_int(1, n);
      const int b = rng.next_int(1, n);
      if (a != b) edges.emplace_back(a, b);
    }
    if (static_cast<int>(edges.size()) <= max_edges)
      return tvsyn::from_edge_list(n, edges);
  }
}

}  // namespace oracles
