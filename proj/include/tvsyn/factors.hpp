#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace tvsyn {

// max column l2 norm of the pseudoinverse of d.
double inverse_scaling_factor(const Eigen::MatrixXd& d);

// Compatibility factor: sqrt(s') / max_{sigma in {+-1}^{s'}} ||D_{S'}' sigma||_2,
// the exact value of inf_f sqrt(s') ||f||_2 / ||(Df)_{S'}||_1; 1 for empty S'.
// sprime holds 1-based row indices.
double strong_compat(const Eigen::MatrixXd& d, const std::vector<int>& sprime,
                     int max_signs = 20);

// Primal validation of strong_compat: maximize ||(Df)_{S'}||_1 on the unit
// sphere by projected subgradient ascent with restarts.
double strong_compat_primal_search(const Eigen::MatrixXd& d, const std::vector<int>& sprime,
                                   int restarts = 20, int iterations = 500,
                                   std::uint64_t seed = 1);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

struct WeakCompatOptions {
  int max_signs = 12;
  int primal_iterations = 500;
  int primal_restarts = 10;
  int dual_iterations = 600;
  std::uint64_t seed = 1;
};

// Interval for the weak compatibility constant
//   kappa = inf_f sqrt(s') ||f||_n / (||(Df)_{S'}||_1 - ||(Df)_{-S'}||_1).
// Upper bound: the ratio evaluated at search candidates. Lower bound: a
// certified bound via max_sigma min_{||w||_inf <= 1} ||D_{S'}' sigma - D_{-S'}' w||_2
// (any feasible w bounds the inner sup from above). Returns (inf, inf) when
// the denominator is certified nonpositive for every f.
Interval weak_compat_bounds(const Eigen::MatrixXd& d, const std::vector<int>& sprime,
                            const WeakCompatOptions& opts = {});

enum class GraphFamily { path, grid2d, star, cycle };

struct SprimePolicy {
  enum class Kind { none, first_k, explicit_list };
  Kind kind = Kind::none;
  int k = 0;
  std::vector<int> edges;  // 1-based, for explicit_list
};

struct FactorReport {
  std::string family;
  int n = 0;
  int m = 0;
  std::vector<int> sprime;
  double rho = 0.0;
  double kappa_strong = 0.0;      // NaN when not computed
  double kappa_weak_lower = 0.0;  // NaN when not computed
  double kappa_weak_upper = 0.0;
};

std::vector<FactorReport> table1_report(GraphFamily family, const std::vector<int>& sizes,
                                        const SprimePolicy& policy = {});

}  // namespace tvsyn
