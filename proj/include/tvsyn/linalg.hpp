#pragma once

#include <Eigen/Dense>
#include <vector>

namespace tvsyn {

struct ProjectionPair {
  Eigen::MatrixXd projector;       // Pi_V
  Eigen::MatrixXd antiprojector;   // A_V = I - Pi_V
  Eigen::MatrixXd subspace_basis;  // n x d
};

// Gauss-Jordan with partial pivoting; throws Singular when a pivot
// falls below 1e-12.
Eigen::MatrixXd invert(const Eigen::MatrixXd& m);

// Moore-Penrose pseudoinverse via SVD; satisfies the four Penrose
// equations to 1e-9 at desk scale.
Eigen::MatrixXd pseudoinverse_svd(const Eigen::MatrixXd& m);

// Bordered construction: for invertible d_full and row index set u (1-based),
// returns the pseudoinverse of d_full with rows u deleted, computed as the
// antiprojection of the complementary inverse columns onto span of the
// u-indexed inverse columns. Throws EmptyComplement when u = [n].
Eigen::MatrixXd pseudoinverse_bordered(const Eigen::MatrixXd& d_full,
                                       const std::vector<int>& u);

// Gram-based orthogonal projector onto colspan(basis) plus its antiprojector.
// Throws RankDeficientBasis; warns on stderr when the basis condition
// number exceeds 1e12.
ProjectionPair projection_pair(const Eigen::MatrixXd& basis);

// Number of singular values above tol * sigma_max.
int rank(const Eigen::MatrixXd& m, double tol = 1e-10);

// Orthonormal basis of the nullspace, n x (n - r). May have zero columns.
Eigen::MatrixXd nullspace_basis(const Eigen::MatrixXd& m, double tol = 1e-10);

// Row/column gathering and stacking helpers (indices are 0-based here).
Eigen::MatrixXd rows_subset(const Eigen::MatrixXd& m, const std::vector<int>& idx);
Eigen::MatrixXd cols_subset(const Eigen::MatrixXd& m, const std::vector<int>& idx);
Eigen::MatrixXd vstack(const Eigen::MatrixXd& top, const Eigen::MatrixXd& bottom);
Eigen::MatrixXd hstack(const Eigen::MatrixXd& left, const Eigen::MatrixXd& right);

}  // namespace tvsyn
