#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "tvsyn/dictionary.hpp"
#include "tvsyn/graph.hpp"

namespace tvsyn {

struct FitOptions {
  double order_scale = 1.0;  // the n^{k-1} factor; effective lambda = lambda * order_scale
  long max_sweeps = 100000;
  double coord_tol = 1e-10;
  double kkt_tol = 1e-8;
  long max_admm_iterations = 50000;
  double admm_tol = 1e-9;
  double rho = 1.0;
};

struct FitResult {
  std::optional<Eigen::VectorXd> beta;  // absent for analysis fits
  Eigen::VectorXd fitted;
  double lambda = 0.0;  // the caller's lambda, before order_scale
  double objective = 0.0;
  long iterations = 0;
  // Analysis: ADMM primal/dual residual norms. Synthesis: final KKT
  // violation and final max coordinate change.
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  // Largest objective increase seen after the ADMM burn-in (analysis only).
  double objective_drift = 0.0;
};

// Lasso with an unpenalized block, minimized by cyclic coordinate descent;
// the unpenalized coordinates are refit by exact least squares every sweep.
FitResult fit_partial_lasso(const Eigen::VectorXd& y, const Eigen::MatrixXd& design,
                            const std::vector<bool>& penalized, double lambda,
                            const FitOptions& opts = {});

// Synthesis estimator on [J | atoms] with the nullspace block unpenalized.
FitResult fit_synthesis(const Eigen::VectorXd& y, const Dictionary& dict, double lambda,
                        const FitOptions& opts = {});

// Analysis (total variation regularized) estimator via ADMM on the split
// z = D f, with residual-balanced penalty parameter.
FitResult fit_analysis(const Eigen::VectorXd& y, const Eigen::MatrixXd& d, double lambda,
                       const FitOptions& opts = {});
FitResult fit_analysis(const Eigen::VectorXd& y, const Operator& op, double lambda,
                       const FitOptions& opts = {});

struct KktReport {
  double penalized_excess = 0.0;      // max (|grad_j| - 2*lambda)_+ over inactive atoms
  double active_gap = 0.0;            // max | |grad_j| - 2*lambda | over active atoms
  double unpenalized_gradient = 0.0;  // max |grad_j| over the unpenalized block
  bool pass = false;
};

KktReport kkt_check(const Eigen::VectorXd& y, const Eigen::MatrixXd& design,
                    const std::vector<bool>& penalized, double lambda,
                    const Eigen::VectorXd& beta, const FitOptions& opts = {});

struct EquivalenceReport {
  double gap = 0.0;
  double tol = 1e-6;
  bool pass = false;
  Eigen::VectorXd lhs;  // fitted values of the two routes
  Eigen::VectorXd rhs;
};

// Reparameterization invariance of the partially penalized lasso:
// [X_U, X_-U] vs [X_U, A_U X_-U] give the same fit. u holds 1-based columns.
EquivalenceReport check_lemma21(const Eigen::VectorXd& y, const Eigen::MatrixXd& x_full,
                                const std::vector<int>& u, double lambda,
                                const FitOptions& opts = {});

// Underdetermined equivalence: analysis = synthesis with X = D^+ plus the
// nullspace part of y added back. Requires full row rank, m < n.
EquivalenceReport check_lemma31(const Eigen::VectorXd& y, const Eigen::MatrixXd& d,
                                double lambda, const FitOptions& opts = {});

// Square invertible equivalence: analysis = synthesis with X = D^{-1}.
EquivalenceReport check_lemma32(const Eigen::VectorXd& y, const Eigen::MatrixXd& d,
                                double lambda, const FitOptions& opts = {});

enum class DictMethod { recipe, tree, cuts, closed_form };

// End-to-end equivalence of the order-k analysis fit and the synthesis fit on
// the chosen dictionary, both with the n^{k-1} scale applied.
EquivalenceReport check_corollary41(const Eigen::VectorXd& y, const DirectedGraph& g, int k,
                                    double lambda, DictMethod method,
                                    const FitOptions& opts = {});

// Dictionary construction for check_corollary41 and the CLI.
Dictionary dictionary_for_method(const DirectedGraph& g, int k, DictMethod method);

}  // namespace tvsyn
