#pragma once

#include <Eigen/Dense>

namespace tvsyn {

struct FeasibilityLP {
  bool feasible = false;
  Eigen::VectorXd theta;  // a feasible point when feasible
  long iterations = 0;
};

// Phase-1 dense simplex with Bland's rule for the system
//   a * theta = b,  theta >= 0.
// Feasible when the artificial objective reaches <= tol. Throws LPFailure
// when the pivot cap is hit.
FeasibilityLP equality_feasibility(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                   double tol = 1e-8, long max_pivots = 100000);

}  // namespace tvsyn
