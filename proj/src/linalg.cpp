#include "tvsyn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "tvsyn/errors.hpp"

namespace tvsyn {

Eigen::MatrixXd invert(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::DimensionMismatch, "invert needs a square matrix");
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd work = m;
  Eigen::MatrixXd inverse = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot_row = col;
    double pivot_mag = std::abs(work(col, col));
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (std::abs(work(r, col)) > pivot_mag) {
        pivot_mag = std::abs(work(r, col));
        pivot_row = r;
      }
    }
    if (pivot_mag < 1e-12)
      fail(ErrorCode::Singular,
           "pivot " + std::to_string(pivot_mag) + " below 1e-12 at column " +
               std::to_string(col + 1));
    if (pivot_row != col) {
      work.row(pivot_row).swap(work.row(col));
      inverse.row(pivot_row).swap(inverse.row(col));
    }
    const double pivot = work(col, col);
    work.row(col) /= pivot;
    inverse.row(col) /= pivot;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = work(r, col);
      if (factor != 0.0) {
        work.row(r) -= factor * work.row(col);
        inverse.row(r) -= factor * inverse.row(col);
      }
    }
  }
  return inverse;
}

Eigen::MatrixXd pseudoinverse_svd(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return Eigen::MatrixXd::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    fail(ErrorCode::ConvergenceFailure, "SVD did not converge");
  const auto& sigma = svd.singularValues();
  const double cutoff =
      sigma.size() > 0
          ? sigma(0) * std::max(m.rows(), m.cols()) * std::numeric_limits<double>::epsilon() *
                16.0
          : 0.0;
  Eigen::VectorXd inv_sigma = Eigen::VectorXd::Zero(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > cutoff) inv_sigma(i) = 1.0 / sigma(i);
  return svd.matrixV() * inv_sigma.asDiagonal() * svd.matrixU().transpose();
}

Eigen::MatrixXd pseudoinverse_bordered(const Eigen::MatrixXd& d_full,
                                       const std::vector<int>& u) {
  if (d_full.rows() != d_full.cols())
    fail(ErrorCode::DimensionMismatch, "bordered construction needs a square matrix");
  const Eigen::Index n = d_full.rows();
  std::vector<char> in_u(static_cast<std::size_t>(n), 0);
  for (int idx : u) {
    if (idx < 1 || idx > n) fail(ErrorCode::IndexOutOfRange, "row index out of range");
    in_u[static_cast<std::size_t>(idx - 1)] = 1;
  }
  std::vector<int> u0, comp0;
  for (Eigen::Index i = 0; i < n; ++i)
    (in_u[static_cast<std::size_t>(i)] ? u0 : comp0).push_back(static_cast<int>(i));
  if (comp0.empty()) fail(ErrorCode::EmptyComplement, "every row was deleted");

  const Eigen::MatrixXd x = invert(d_full);
  const Eigen::MatrixXd x_rest = cols_subset(x, comp0);
  if (u0.empty()) return x_rest;  // no border: the plain inverse
  // antiprojection onto span(X_U), through an orthonormal basis so the
  // Gram conditioning does not get squared
  const Eigen::MatrixXd x_border = cols_subset(x, u0);
  const Eigen::MatrixXd q =
      Eigen::HouseholderQR<Eigen::MatrixXd>(x_border).householderQ() *
      Eigen::MatrixXd::Identity(n, x_border.cols());
  return x_rest - q * (q.transpose() * x_rest);
}

ProjectionPair projection_pair(const Eigen::MatrixXd& basis) {
  const Eigen::Index n = basis.rows();
  const Eigen::Index d = basis.cols();
  if (d == 0) {
    return ProjectionPair{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Identity(n, n), basis};
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis);
  const auto& sigma = svd.singularValues();
  const double smax = sigma(0);
  const double smin = sigma(sigma.size() - 1);
  if (smin <= smax * 1e-13 || smin == 0.0)
    fail(ErrorCode::RankDeficientBasis, "basis columns are not linearly independent");
  const double gram_cond = (smax / smin) * (smax / smin);
  if (gram_cond > 1e12)
    std::cerr << "warning: projection basis Gram condition " << gram_cond << " exceeds 1e12\n";
  const Eigen::MatrixXd gram = basis.transpose() * basis;
  Eigen::MatrixXd projector = basis * invert(gram) * basis.transpose();
  ProjectionPair pair;
  pair.antiprojector = Eigen::MatrixXd::Identity(n, n) - projector;
  pair.projector = std::move(projector);
  pair.subspace_basis = basis;
  return pair;
}

int rank(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  if (tol <= 0) fail(ErrorCode::BadShape, "rank tolerance must be positive");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > tol * sigma(0)) ++r;
  return r;
}

Eigen::MatrixXd nullspace_basis(const Eigen::MatrixXd& m, double tol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0 || m.size() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  int r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (smax > 0.0 && sigma(i) > tol * smax) ++r;
  return svd.matrixV().rightCols(n - r);
}

Eigen::MatrixXd rows_subset(const Eigen::MatrixXd& m, const std::vector<int>& idx) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(idx[i]);
  return out;
}

Eigen::MatrixXd cols_subset(const Eigen::MatrixXd& m, const std::vector<int>& idx) {
  Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = m.col(idx[i]);
  return out;
}

Eigen::MatrixXd vstack(const Eigen::MatrixXd& top, const Eigen::MatrixXd& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  if (top.cols() != bottom.cols()) fail(ErrorCode::DimensionMismatch, "vstack column mismatch");
  Eigen::MatrixXd out(top.rows() + bottom.rows(), top.cols());
  out.topRows(top.rows()) = top;
  out.bottomRows(bottom.rows()) = bottom;
  return out;
}

Eigen::MatrixXd hstack(const Eigen::MatrixXd& left, const Eigen::MatrixXd& right) {
  if (left.cols() == 0) return right;
  if (right.cols() == 0) return left;
  if (left.rows() != right.rows()) fail(ErrorCode::DimensionMismatch, "hstack row mismatch");
  Eigen::MatrixXd out(left.rows(), left.cols() + right.cols());
  out.leftCols(left.cols()) = left;
  out.rightCols(right.cols()) = right;
  return out;
}

}  // namespace tvsyn
