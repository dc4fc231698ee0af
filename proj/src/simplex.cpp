#include "tvsyn/simplex.hpp"

#include <cmath>

#include "tvsyn/errors.hpp"

namespace tvsyn {

FeasibilityLP equality_feasibility(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                   double tol, long max_pivots) {
  if (a.rows() != b.size()) fail(ErrorCode::DimensionMismatch, "LP row count mismatch");
  const Eigen::Index k = a.rows();
  const Eigen::Index n = a.cols();
  const double pivot_eps = 1e-9;

  // Phase-1 tableau: [A | I | rhs] with rhs >= 0, artificial basis,
  // objective row = reduced costs for min(sum of artificials).
  Eigen::MatrixXd tab = Eigen::MatrixXd::Zero(k + 1, n + k + 1);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double flip = b(i) < 0.0 ? -1.0 : 1.0;
    tab.row(i).head(n) = flip * a.row(i);
    tab(i, n + i) = 1.0;
    tab(i, n + k) = flip * b(i);
  }
  for (Eigen::Index i = 0; i < k; ++i) tab.row(k) -= tab.row(i);
  for (Eigen::Index i = 0; i < k; ++i) tab(k, n + i) = 0.0;

  std::vector<Eigen::Index> basis(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  FeasibilityLP result;
  for (long pivot = 0;; ++pivot) {
    if (pivot >= max_pivots) fail(ErrorCode::LPFailure, "simplex pivot cap reached");

    // Bland's rule: smallest-index column with negative reduced cost.
    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < n + k; ++j) {
      if (tab(k, j) < -pivot_eps) {
        entering = j;
        break;
      }
    }
    if (entering < 0) {
      result.iterations = pivot;
      break;
    }

    // Ratio test; ties broken by smallest basis index (Bland).
    Eigen::Index leaving = -1;
    double best_ratio = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (tab(i, entering) > pivot_eps) {
        const double ratio = tab(i, n + k) / tab(i, entering);
        if (leaving < 0 || ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 &&
             basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leaving)])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
    }
    if (leaving < 0) fail(ErrorCode::LPFailure, "phase-1 objective unbounded");

    tab.row(leaving) /= tab(leaving, entering);
    for (Eigen::Index r = 0; r <= k; ++r) {
      if (r == leaving) continue;
      const double factor = tab(r, entering);
      if (factor != 0.0) tab.row(r) -= factor * tab.row(leaving);
    }
    basis[static_cast<std::size_t>(leaving)] = entering;
  }

  const double objective = -tab(k, n + k);
  result.feasible = objective <= tol;
  result.theta = Eigen::VectorXd::Zero(n);
  if (result.feasible) {
    for (Eigen::Index i = 0; i < k; ++i) {
      const Eigen::Index var = basis[static_cast<std::size_t>(i)];
      if (var < n) result.theta(var) = tab(i, n + k);
    }
  }
  return result;
}

}  // namespace tvsyn
