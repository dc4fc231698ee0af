#pragma once

// Frozen reference matrices for the n = 8 worked examples: the three
// derivative operators and the three bordered-inverse tables for the path,
// the branched path (b = 4, n1 = 6), and the cycle operators.

#include <Eigen/Dense>
#include <vector>

namespace goldens {

inline Eigen::MatrixXd from_rows(const std::vector<std::vector<double>>& rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return m;
}

// Rows of `actual` match rows of `expected` one-to-one up to sign.
inline bool rows_match_up_to_permutation_and_sign(const Eigen::MatrixXd& actual,
                                                  const Eigen::MatrixXd& expected,
                                                  double tol = 0.0) {
  if (actual.rows() != expected.rows() || actual.cols() != expected.cols()) return false;
  std::vector<bool> used(static_cast<std::size_t>(expected.rows()), false);
  for (Eigen::Index i = 0; i < actual.rows(); ++i) {
    bool found = false;
    for (Eigen::Index j = 0; j < expected.rows(); ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double plus = (actual.row(i) - expected.row(j)).lpNorm<Eigen::Infinity>();
      const double minus = (actual.row(i) + expected.row(j)).lpNorm<Eigen::Infinity>();
      if (plus <= tol || minus <= tol) {
        used[static_cast<std::size_t>(j)] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

inline Eigen::MatrixXd path_d1() {
  return from_rows({{-1, 1, 0, 0, 0, 0, 0, 0},
                    {0, -1, 1, 0, 0, 0, 0, 0},
                    {0, 0, -1, 1, 0, 0, 0, 0},
                    {0, 0, 0, -1, 1, 0, 0, 0},
                    {0, 0, 0, 0, -1, 1, 0, 0},
                    {0, 0, 0, 0, 0, -1, 1, 0},
                    {0, 0, 0, 0, 0, 0, -1, 1}});
}

inline Eigen::MatrixXd path_d2() {
  return from_rows({{1, -2, 1, 0, 0, 0, 0, 0},
                    {0, 1, -2, 1, 0, 0, 0, 0},
                    {0, 0, 1, -2, 1, 0, 0, 0},
                    {0, 0, 0, 1, -2, 1, 0, 0},
                    {0, 0, 0, 0, 1, -2, 1, 0},
                    {0, 0, 0, 0, 0, 1, -2, 1}});
}

inline Eigen::MatrixXd path_d3() {
  return from_rows({{-1, 3, -3, 1, 0, 0, 0, 0},
                    {0, -1, 3, -3, 1, 0, 0, 0},
                    {0, 0, -1, 3, -3, 1, 0, 0},
                    {0, 0, 0, -1, 3, -3, 1, 0},
                    {0, 0, 0, 0, -1, 3, -3, 1}});
}

inline Eigen::MatrixXd path_v1() {
  return from_rows({{1, 0, 0, 0, 0, 0, 0, 0},
                    {1, 1, 0, 0, 0, 0, 0, 0},
                    {1, 1, 1, 0, 0, 0, 0, 0},
                    {1, 1, 1, 1, 0, 0, 0, 0},
                    {1, 1, 1, 1, 1, 0, 0, 0},
                    {1, 1, 1, 1, 1, 1, 0, 0},
                    {1, 1, 1, 1, 1, 1, 1, 0},
                    {1, 1, 1, 1, 1, 1, 1, 1}});
}

inline Eigen::MatrixXd path_v2() {
  return from_rows({{1, 0, 0, 0, 0, 0, 0, 0},
                    {1, 1, 0, 0, 0, 0, 0, 0},
                    {1, 2, 1, 0, 0, 0, 0, 0},
                    {1, 3, 2, 1, 0, 0, 0, 0},
                    {1, 4, 3, 2, 1, 0, 0, 0},
                    {1, 5, 4, 3, 2, 1, 0, 0},
                    {1, 6, 5, 4, 3, 2, 1, 0},
                    {1, 7, 6, 5, 4, 3, 2, 1}});
}

inline Eigen::MatrixXd path_v3() {
  return from_rows({{1, 0, 0, 0, 0, 0, 0, 0},
                    {1, 1, 0, 0, 0, 0, 0, 0},
                    {1, 2, 1, 0, 0, 0, 0, 0},
                    {1, 3, 3, 1, 0, 0, 0, 0},
                    {1, 4, 6, 3, 1, 0, 0, 0},
                    {1, 5, 10, 6, 3, 1, 0, 0},
                    {1, 6, 15, 10, 6, 3, 1, 0},
                    {1, 7, 21, 15, 10, 6, 3, 1}});
}

inline Eigen::MatrixXd branched_d1() {
  return from_rows({{-1, 1, 0, 0, 0, 0, 0, 0},
                    {0, -1, 1, 0, 0, 0, 0, 0},
                    {0, 0, -1, 1, 0, 0, 0, 0},
                    {0, 0, 0, -1, 1, 0, 0, 0},
                    {0, 0, 0, 0, -1, 1, 0, 0},
                    {0, 0, 0, -1, 0, 0, 1, 0},
                    {0, 0, 0, 0, 0, 0, -1, 1}});
}

inline Eigen::MatrixXd branched_d2() {
  return from_rows({{1, -2, 1, 0, 0, 0, 0, 0},
                    {0, 1, -2, 1, 0, 0, 0, 0},
                    {0, 0, 1, -2, 1, 0, 0, 0},
                    {0, 0, 0, 1, -2, 1, 0, 0},
                    {0, 0, 1, -2, 0, 0, 1, 0},
                    {0, 0, 0, 1, 0, 0, -2, 1}});
}

inline Eigen::MatrixXd branched_d3() {
  return from_rows({{-1, 3, -3, 1, 0, 0, 0, 0},
                    {0, -1, 3, -3, 1, 0, 0, 0},
                    {0, 0, -1, 3, -3, 1, 0, 0},
                    {0, -1, 3, -3, 0, 0, 1, 0},
                    {0, 0, -1, 3, 0, 0, -3, 1}});
}

inline Eigen::MatrixXd branched_v1() {
  return from_rows({{1, 0, 0, 0, 0, 0, 0, 0},
                    {1, 1, 0, 0, 0, 0, 0, 0},
                    {1, 1, 1, 0, 0, 0, 0, 0},
                    {1, 1, 1, 1, 0, 0, 0, 0},
                    {1, 1, 1, 1, 1, 0, 0, 0},
                    {1, 1, 1, 1, 1, 1, 0, 0},
                    {1, 1, 1, 1, 0, 0, 1, 0},
                    {1, 1, 1, 1, 0, 0, 1, 1}});
}

inline Eigen::MatrixXd branched_v2() {
  return from_rows({{1, 0, 0, 0, 0, 0, 0, 0},
                    {1, 1, 0, 0, 0, 0, 0, 0},
                    {1, 2, 1, 0, 0, 0, 0, 0},
                    {1, 3, 2, 1, 0, 0, 0, 0},
                    {1, 4, 3, 2, 1, 0, 0, 0},
                    {1, 5, 4, 3, 2, 1, 0, 0},
                    {1, 4, 3, 2, 0, 0, 1, 0},
                    {1, 5, 4, 3, 0, 0, 2, 1}});
}

inline Eigen::MatrixXd branched_v3() {
  return from_rows({{1, 0, 0, 0, 0, 0, 0, 0},
                    {1, 1, 0, 0, 0, 0, 0, 0},
                    {1, 2, 1, 0, 0, 0, 0, 0},
                    {1, 3, 3, 1, 0, 0, 0, 0},
                    {1, 4, 6, 3, 1, 0, 0, 0},
                    {1, 5, 10, 6, 3, 1, 0, 0},
                    {1, 4, 6, 3, 0, 0, 1, 0},
                    {1, 5, 10, 6, 0, 0, 3, 1}});
}

inline Eigen::MatrixXd cycle_d1() {
  return from_rows({{-1, 1, 0, 0, 0, 0, 0, 0},
                    {0, -1, 1, 0, 0, 0, 0, 0},
                    {0, 0, -1, 1, 0, 0, 0, 0},
                    {0, 0, 0, -1, 1, 0, 0, 0},
                    {0, 0, 0, 0, -1, 1, 0, 0},
                    {0, 0, 0, 0, 0, -1, 1, 0},
                    {0, 0, 0, 0, 0, 0, -1, 1},
                    {1, 0, 0, 0, 0, 0, 0, -1}});
}

inline Eigen::MatrixXd cycle_d2() {
  return from_rows({{1, -2, 1, 0, 0, 0, 0, 0},
                    {0, 1, -2, 1, 0, 0, 0, 0},
                    {0, 0, 1, -2, 1, 0, 0, 0},
                    {0, 0, 0, 1, -2, 1, 0, 0},
                    {0, 0, 0, 0, 1, -2, 1, 0},
                    {0, 0, 0, 0, 0, 1, -2, 1},
                    {1, 0, 0, 0, 0, 0, 1, -2},
                    {-2, 1, 0, 0, 0, 0, 0, 1}});
}

inline Eigen::MatrixXd cycle_d3() {
  return from_rows({{-1, 3, -3, 1, 0, 0, 0, 0},
                    {0, -1, 3, -3, 1, 0, 0, 0},
                    {0, 0, -1, 3, -3, 1, 0, 0},
                    {0, 0, 0, -1, 3, -3, 1, 0},
                    {0, 0, 0, 0, -1, 3, -3, 1},
                    {1, 0, 0, 0, 0, -1, 3, -3},
                    {-3, 1, 0, 0, 0, 0, -1, 3},
                    {3, -3, 1, 0, 0, 0, 0, -1}});
}

// The bordering rows chosen in the worked examples for order k on a
// root-1 chain-like graph: e1', then first differences of e1', ...
inline Eigen::MatrixXd border_rows(int k, int n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, n);
  a(0, 0) = 1;
  if (k >= 2) {
    a(1, 0) = -1;
    a(1, 1) = 1;
  }
  if (k >= 3) {
    a(2, 0) = 1;
    a(2, 1) = -2;
    a(2, 2) = 1;
  }
  return a;
}

}  // namespace goldens
