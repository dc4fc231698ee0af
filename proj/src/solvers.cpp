#include "tvsyn/solvers.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <string>

#include "tvsyn/errors.hpp"
#include "tvsyn/linalg.hpp"

namespace tvsyn {

namespace {

double soft_threshold(double value, double threshold) {
  if (value > threshold) return value - threshold;
  if (value < -threshold) return value + threshold;
  return 0.0;
}

// KKT violation of the partially penalized lasso at beta; grad is the
// gradient of ||y - Z beta||_n^2.
double kkt_violation(const Eigen::VectorXd& grad, const Eigen::VectorXd& beta,
                     const std::vector<bool>& penalized, double two_lambda) {
  double violation = 0.0;
  for (Eigen::Index j = 0; j < grad.size(); ++j) {
    if (!penalized[static_cast<std::size_t>(j)]) {
      violation = std::max(violation, std::abs(grad(j)));
    } else if (std::abs(beta(j)) > 1e-12) {
      violation = std::max(violation, std::abs(grad(j) + two_lambda * (beta(j) > 0 ? 1.0 : -1.0)));
    } else {
      violation = std::max(violation, std::max(0.0, std::abs(grad(j)) - two_lambda));
    }
  }
  return violation;
}

FitOptions tightened(const FitOptions& opts) {
  FitOptions strict = opts;
  strict.coord_tol = std::min(opts.coord_tol, 1e-12);
  strict.kkt_tol = std::min(opts.kkt_tol, 1e-10);
  strict.admm_tol = std::min(opts.admm_tol, 1e-10);
  return strict;
}

EquivalenceReport make_report(const Eigen::VectorXd& lhs, const Eigen::VectorXd& rhs) {
  EquivalenceReport report;
  report.lhs = lhs;
  report.rhs = rhs;
  report.gap = (lhs - rhs).norm();
  report.tol = 1e-6;
  report.pass = report.gap < report.tol;
  return report;
}

}  // namespace

FitResult fit_partial_lasso(const Eigen::VectorXd& y, const Eigen::MatrixXd& design,
                            const std::vector<bool>& penalized, double lambda,
                            const FitOptions& opts) {
  const Eigen::Index n = y.size();
  const Eigen::Index p = design.cols();
  if (design.rows() != n) fail(ErrorCode::DimensionMismatch, "design rows != observations");
  if (static_cast<Eigen::Index>(penalized.size()) != p)
    fail(ErrorCode::DimensionMismatch, "penalized mask size != design columns");
  if (lambda < 0) fail(ErrorCode::BadShape, "lambda must be nonnegative");
  const double lambda_eff = lambda * opts.order_scale;

  FitResult result;
  result.lambda = lambda;
  if (p == 0) {
    result.beta = Eigen::VectorXd::Zero(0);
    result.fitted = Eigen::VectorXd::Zero(n);
    result.objective = y.squaredNorm() / static_cast<double>(n);
    return result;
  }

  std::vector<int> unpen_idx, pen_idx;
  for (Eigen::Index j = 0; j < p; ++j)
    (penalized[static_cast<std::size_t>(j)] ? pen_idx : unpen_idx).push_back(static_cast<int>(j));

  Eigen::MatrixXd design_unpen(n, static_cast<Eigen::Index>(unpen_idx.size()));
  for (std::size_t i = 0; i < unpen_idx.size(); ++i)
    design_unpen.col(static_cast<Eigen::Index>(i)) = design.col(unpen_idx[i]);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> unpen_qr;
  if (!unpen_idx.empty()) unpen_qr.compute(design_unpen);

  Eigen::VectorXd col_sqnorm(p);
  for (Eigen::Index j = 0; j < p; ++j) col_sqnorm(j) = design.col(j).squaredNorm();

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd residual = y;
  double kkt = 0.0;
  double max_change = 0.0;
  bool converged = false;
  long sweep = 0;

  for (sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    max_change = 0.0;

    if (!unpen_idx.empty()) {
      Eigen::VectorXd block(unpen_idx.size());
      for (std::size_t i = 0; i < unpen_idx.size(); ++i) block(static_cast<Eigen::Index>(i)) = beta(unpen_idx[i]);
      const Eigen::VectorXd target = residual + design_unpen * block;
      const Eigen::VectorXd solved = unpen_qr.solve(target);
      max_change = (solved - block).lpNorm<Eigen::Infinity>();
      for (std::size_t i = 0; i < unpen_idx.size(); ++i) beta(unpen_idx[i]) = solved(static_cast<Eigen::Index>(i));
      residual = target - design_unpen * solved;
    }

    for (int j : pen_idx) {
      const double sqnorm = col_sqnorm(j);
      if (sqnorm < 1e-14) continue;
      const double old_value = beta(j);
      const double partial = design.col(j).dot(residual) + sqnorm * old_value;
      const double new_value =
          soft_threshold(partial, static_cast<double>(n) * lambda_eff) / sqnorm;
      const double delta = new_value - old_value;
      if (delta != 0.0) {
        residual -= delta * design.col(j);
        beta(j) = new_value;
        max_change = std::max(max_change, std::abs(delta));
      }
    }

    const Eigen::VectorXd grad = -(2.0 / static_cast<double>(n)) * (design.transpose() * residual);
    kkt = kkt_violation(grad, beta, penalized, 2.0 * lambda_eff);
    if (max_change < opts.coord_tol || kkt < opts.kkt_tol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    fail(ErrorCode::NotConverged,
         "coordinate descent hit the sweep cap of " + std::to_string(opts.max_sweeps));

  double penalty = 0.0;
  for (int j : pen_idx) penalty += std::abs(beta(j));
  result.beta = beta;
  result.fitted = y - residual;
  result.objective = residual.squaredNorm() / static_cast<double>(n) + 2.0 * lambda_eff * penalty;
  result.iterations = sweep;
  result.primal_residual = kkt;
  result.dual_residual = max_change;
  return result;
}

FitResult fit_synthesis(const Eigen::VectorXd& y, const Dictionary& dict, double lambda,
                        const FitOptions& opts) {
  const Eigen::MatrixXd design = hstack(dict.nullspace_block, dict.atoms);
  std::vector<bool> penalized(static_cast<std::size_t>(design.cols()), true);
  for (Eigen::Index j = 0; j < dict.nullspace_block.cols(); ++j)
    penalized[static_cast<std::size_t>(j)] = false;
  return fit_partial_lasso(y, design, penalized, lambda, opts);
}

FitResult fit_analysis(const Eigen::VectorXd& y, const Eigen::MatrixXd& d, double lambda,
                       const FitOptions& opts) {
  const Eigen::Index n = y.size();
  const Eigen::Index m = d.rows();
  if (d.cols() != n) fail(ErrorCode::DimensionMismatch, "operator columns != observations");
  if (lambda < 0) fail(ErrorCode::BadShape, "lambda must be nonnegative");
  const double lambda_eff = lambda * opts.order_scale;

  FitResult result;
  result.lambda = lambda;
  if (m == 0 || lambda_eff == 0.0) {
    result.fitted = y;
    result.objective = 0.0;
    if (m > 0) result.objective = 2.0 * lambda_eff * (d * y).lpNorm<1>();
    return result;
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  double rho = opts.rho;
  const Eigen::MatrixXd dtd = d.transpose() * d;
  const auto factor = [&](double penalty) {
    return Eigen::LLT<Eigen::MatrixXd>(
        (2.0 * inv_n) * Eigen::MatrixXd::Identity(n, n) + penalty * dtd);
  };
  Eigen::LLT<Eigen::MatrixXd> llt = factor(rho);

  Eigen::VectorXd f = y;
  Eigen::VectorXd z = d * f;
  Eigen::VectorXd dual = Eigen::VectorXd::Zero(m);
  double previous_objective = 0.0;
  double drift = 0.0;
  bool converged = false;
  long iteration = 0;
  double r_primal = 0.0, r_dual = 0.0;

  for (iteration = 1; iteration <= opts.max_admm_iterations; ++iteration) {
    f = llt.solve(2.0 * inv_n * y + rho * (d.transpose() * (z - dual)));
    const Eigen::VectorXd df = d * f;

    const double objective =
        (y - f).squaredNorm() * inv_n + 2.0 * lambda_eff * df.lpNorm<1>();
    if (iteration > 10) drift = std::max(drift, objective - previous_objective);
    previous_objective = objective;

    const Eigen::VectorXd z_old = z;
    const double threshold = 2.0 * lambda_eff / rho;
    z = df + dual;
    for (Eigen::Index i = 0; i < m; ++i) z(i) = soft_threshold(z(i), threshold);
    dual += df - z;

    r_primal = (df - z).norm();
    r_dual = rho * (d.transpose() * (z - z_old)).norm();
    const double eps_primal = opts.admm_tol * std::sqrt(static_cast<double>(m));
    const double eps_dual = opts.admm_tol * std::sqrt(static_cast<double>(n));
    if (r_primal <= eps_primal && r_dual <= eps_dual) {
      converged = true;
      break;
    }

    if (iteration % 25 == 0) {
      if (r_primal > 10.0 * r_dual) {
        rho *= 2.0;
        dual /= 2.0;
        llt = factor(rho);
      } else if (r_dual > 10.0 * r_primal) {
        rho /= 2.0;
        dual *= 2.0;
        llt = factor(rho);
      }
    }
  }
  if (!converged)
    fail(ErrorCode::NotConverged,
         "ADMM hit the iteration cap of " + std::to_string(opts.max_admm_iterations));

  result.fitted = f;
  result.objective = (y - f).squaredNorm() * inv_n + 2.0 * lambda_eff * (d * f).lpNorm<1>();
  result.iterations = iteration;
  result.primal_residual = r_primal;
  result.dual_residual = r_dual;
  result.objective_drift = drift;
  return result;
}

FitResult fit_analysis(const Eigen::VectorXd& y, const Operator& op, double lambda,
                       const FitOptions& opts) {
  return fit_analysis(y, op.entries, lambda, opts);
}

KktReport kkt_check(const Eigen::VectorXd& y, const Eigen::MatrixXd& design,
                    const std::vector<bool>& penalized, double lambda,
                    const Eigen::VectorXd& beta, const FitOptions& opts) {
  const double two_lambda = 2.0 * lambda * opts.order_scale;
  const Eigen::VectorXd residual = y - design * beta;
  const Eigen::VectorXd grad =
      -(2.0 / static_cast<double>(y.size())) * (design.transpose() * residual);
  KktReport report;
  for (Eigen::Index j = 0; j < grad.size(); ++j) {
    if (!penalized[static_cast<std::size_t>(j)]) {
      report.unpenalized_gradient = std::max(report.unpenalized_gradient, std::abs(grad(j)));
    } else if (std::abs(beta(j)) > 1e-12) {
      report.active_gap =
          std::max(report.active_gap, std::abs(std::abs(grad(j)) - two_lambda));
    } else {
      report.penalized_excess =
          std::max(report.penalized_excess, std::max(0.0, std::abs(grad(j)) - two_lambda));
    }
  }
  report.pass = report.penalized_excess <= 1e-7 && report.active_gap <= 1e-6 &&
                report.unpenalized_gradient <= 1e-8;
  return report;
}

EquivalenceReport check_lemma21(const Eigen::VectorXd& y, const Eigen::MatrixXd& x_full,
                                const std::vector<int>& u, double lambda,
                                const FitOptions& opts) {
  const FitOptions strict = tightened(opts);
  const Eigen::Index p = x_full.cols();
  std::vector<bool> penalized(static_cast<std::size_t>(p), true);
  std::vector<int> u0;
  for (int idx : u) {
    if (idx < 1 || idx > p) fail(ErrorCode::IndexOutOfRange, "column index out of range");
    penalized[static_cast<std::size_t>(idx - 1)] = false;
    u0.push_back(idx - 1);
  }
  const FitResult direct = fit_partial_lasso(y, x_full, penalized, lambda, strict);

  Eigen::MatrixXd projected_design = x_full;
  if (!u0.empty()) {
    const ProjectionPair pp = projection_pair(cols_subset(x_full, u0));
    for (Eigen::Index j = 0; j < p; ++j)
      if (penalized[static_cast<std::size_t>(j)])
        projected_design.col(j) = pp.antiprojector * x_full.col(j);
  }
  const FitResult antiprojected = fit_partial_lasso(y, projected_design, penalized, lambda, strict);
  return make_report(direct.fitted, antiprojected.fitted);
}

EquivalenceReport check_lemma31(const Eigen::VectorXd& y, const Eigen::MatrixXd& d,
                                double lambda, const FitOptions& opts) {
  const FitOptions strict = tightened(opts);
  const Eigen::Index m = d.rows();
  const Eigen::Index n = d.cols();
  if (m >= n || rank(d) != m)
    fail(ErrorCode::RankAssumptionViolated, "operator must have full row rank with m < n");
  const FitResult analysis = fit_analysis(y, d, lambda, strict);

  const Eigen::MatrixXd pinv = pseudoinverse_svd(d);
  std::vector<bool> penalized(static_cast<std::size_t>(m), true);
  const FitResult synthesis = fit_partial_lasso(y, pinv, penalized, lambda, strict);
  const Eigen::VectorXd nullspace_part =
      y - pinv * (d * y);  // (I - D^+ D) y, the unpenalized projection
  return make_report(analysis.fitted, synthesis.fitted + nullspace_part);
}

EquivalenceReport check_lemma32(const Eigen::VectorXd& y, const Eigen::MatrixXd& d,
                                double lambda, const FitOptions& opts) {
  const FitOptions strict = tightened(opts);
  const Eigen::MatrixXd inverse = invert(d);
  const FitResult analysis = fit_analysis(y, d, lambda, strict);
  std::vector<bool> penalized(static_cast<std::size_t>(d.rows()), true);
  const FitResult synthesis = fit_partial_lasso(y, inverse, penalized, lambda, strict);
  return make_report(analysis.fitted, synthesis.fitted);
}

Dictionary dictionary_for_method(const DirectedGraph& g, int k, DictMethod method) {
  switch (method) {
    case DictMethod::recipe:
      return synthesize_dictionary(derivative_operator(g, k), Normalization::l1_image);
    case DictMethod::tree:
      if (k != 1) fail(ErrorCode::BadOrder, "tree dictionaries are first-order");
      return tree_dictionary(g, 1);
    case DictMethod::cuts:
      if (k != 1) fail(ErrorCode::BadOrder, "cut dictionaries are first-order");
      return cut_dictionary(g, 1);
    case DictMethod::closed_form: {
      const auto family = detect_closed_form_family(g);
      if (!family) fail(ErrorCode::BadShape, "graph is not a canonically labeled closed-form family");
      switch (family->kind) {
        case ClosedFormFamily::Kind::path:
          return closed_form_path(g.n, k);
        case ClosedFormFamily::Kind::cycle:
          return closed_form_cycle(g.n, k);
        case ClosedFormFamily::Kind::branched:
          return closed_form_branched(g.n, family->b, family->n1, k);
      }
      break;
    }
  }
  fail(ErrorCode::BadShape, "unknown dictionary method");
}

EquivalenceReport check_corollary41(const Eigen::VectorXd& y, const DirectedGraph& g, int k,
                                    double lambda, DictMethod method, const FitOptions& opts) {
  FitOptions strict = tightened(opts);
  strict.order_scale = std::pow(static_cast<double>(g.n), k - 1);
  const Operator op = derivative_operator(g, k);
  const FitResult analysis = fit_analysis(y, op, lambda, strict);
  const Dictionary dict = renormalized(dictionary_for_method(g, k, method), op,
                                       Normalization::l1_image);
  const FitResult synthesis = fit_synthesis(y, dict, lambda, strict);
  return make_report(analysis.fitted, synthesis.fitted);
}

}  // namespace tvsyn
