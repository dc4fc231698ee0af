#include "tvsyn/factors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tvsyn/errors.hpp"
#include "tvsyn/graph.hpp"
#include "tvsyn/linalg.hpp"
#include "tvsyn/random.hpp"

namespace tvsyn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> validated_rows(const Eigen::MatrixXd& d, const std::vector<int>& sprime) {
  std::vector<int> zero_based;
  std::vector<char> seen(static_cast<std::size_t>(d.rows()), 0);
  for (int idx : sprime) {
    if (idx < 1 || idx > d.rows()) fail(ErrorCode::IndexOutOfRange, "edge index out of range");
    if (seen[static_cast<std::size_t>(idx - 1)])
      fail(ErrorCode::IndexOutOfRange, "duplicate edge index in S'");
    seen[static_cast<std::size_t>(idx - 1)] = 1;
    zero_based.push_back(idx - 1);
  }
  return zero_based;
}

std::vector<int> complement_rows(Eigen::Index m, const std::vector<int>& subset) {
  std::vector<char> mark(static_cast<std::size_t>(m), 0);
  for (int i : subset) mark[static_cast<std::size_t>(i)] = 1;
  std::vector<int> rest;
  for (Eigen::Index i = 0; i < m; ++i)
    if (!mark[static_cast<std::size_t>(i)]) rest.push_back(static_cast<int>(i));
  return rest;
}

// ||(Df)_{S'}||_1 - ||(Df)_{-S'}||_1, the weak-compatibility denominator.
double denominator(const Eigen::MatrixXd& ds, const Eigen::MatrixXd& dr,
                   const Eigen::VectorXd& f) {
  const double on = (ds * f).lpNorm<1>();
  const double off = dr.rows() > 0 ? (dr * f).lpNorm<1>() : 0.0;
  return on - off;
}

}  // namespace

double inverse_scaling_factor(const Eigen::MatrixXd& d) {
  const Eigen::MatrixXd pinv = pseudoinverse_svd(d);
  double best = 0.0;
  for (Eigen::Index j = 0; j < pinv.cols(); ++j) best = std::max(best, pinv.col(j).norm());
  return best;
}

double strong_compat(const Eigen::MatrixXd& d, const std::vector<int>& sprime, int max_signs) {
  if (sprime.empty()) return 1.0;
  const auto rows = validated_rows(d, sprime);
  const int s = static_cast<int>(rows.size());
  if (s > max_signs)
    fail(ErrorCode::TooManySigns,
         "sign enumeration limited to " + std::to_string(max_signs) + " rows");
  const Eigen::MatrixXd ds = rows_subset(d, rows);
  double best = 0.0;
  // sigma and -sigma give the same norm; fix the first sign.
  const std::uint32_t patterns = s > 1 ? (1u << (s - 1)) : 1u;
  for (std::uint32_t bits = 0; bits < patterns; ++bits) {
    Eigen::VectorXd sigma(s);
    sigma(0) = 1.0;
    for (int i = 1; i < s; ++i) sigma(i) = (bits >> (i - 1)) & 1u ? -1.0 : 1.0;
    best = std::max(best, (ds.transpose() * sigma).norm());
  }
  if (best <= 1e-14) return kInf;
  return std::sqrt(static_cast<double>(s)) / best;
}

double strong_compat_primal_search(const Eigen::MatrixXd& d, const std::vector<int>& sprime,
                                   int restarts, int iterations, std::uint64_t seed) {
  if (sprime.empty()) return 1.0;
  const auto rows = validated_rows(d, sprime);
  const Eigen::MatrixXd ds = rows_subset(d, rows);
  const Eigen::Index n = d.cols();
  SplitMix64 rng(seed);
  double best = 0.0;
  for (int attempt = 0; attempt < restarts; ++attempt) {
    Eigen::VectorXd f(n);
    for (Eigen::Index i = 0; i < n; ++i) f(i) = rng.next_gaussian();
    f.normalize();
    for (int t = 1; t <= iterations; ++t) {
      const Eigen::VectorXd image = ds * f;
      best = std::max(best, image.lpNorm<1>());
      Eigen::VectorXd signs(image.size());
      for (Eigen::Index i = 0; i < image.size(); ++i)
        signs(i) = image(i) >= 0.0 ? 1.0 : -1.0;
      Eigen::VectorXd ascent = ds.transpose() * signs;
      const double norm = ascent.norm();
      if (norm < 1e-14) break;
      f += (1.0 / std::sqrt(static_cast<double>(t))) * ascent / norm;
      f.normalize();
    }
    best = std::max(best, (ds * f).lpNorm<1>());
  }
  if (best <= 1e-14) return kInf;
  return std::sqrt(static_cast<double>(rows.size())) / best;
}

Interval weak_compat_bounds(const Eigen::MatrixXd& d, const std::vector<int>& sprime,
                            const WeakCompatOptions& opts) {
  if (sprime.empty()) return Interval{1.0, 1.0};
  const auto rows = validated_rows(d, sprime);
  const int s = static_cast<int>(rows.size());
  if (s > opts.max_signs)
    fail(ErrorCode::TooManySigns,
         "sign enumeration limited to " + std::to_string(opts.max_signs) + " rows");
  const Eigen::Index n = d.cols();
  const Eigen::MatrixXd ds = rows_subset(d, rows);
  const Eigen::MatrixXd dr = rows_subset(d, complement_rows(d.rows(), rows));
  const double scale = std::sqrt(static_cast<double>(s) / static_cast<double>(n));

  // Certified upper bound on sup_{||f||<=1} (||(Df)_{S'}||_1 - ||(Df)_{-S'}||_1):
  // for each sign pattern, any box-feasible w yields
  //   sup_f sigma' Ds f - ||Dr f||_1 <= ||Ds' sigma - Dr' w||_2.
  double sup_bound = 0.0;
  Eigen::VectorXd best_direction = Eigen::VectorXd::Zero(n);
  double best_ratio = 0.0;
  const auto consider_primal = [&](const Eigen::VectorXd& f) {
    const double norm = f.norm();
    if (norm < 1e-12) return;
    const double value = denominator(ds, dr, f) / norm;
    if (value > best_ratio) {
      best_ratio = value;
      best_direction = f / norm;
    }
  };

  const std::uint32_t patterns = s > 1 ? (1u << (s - 1)) : 1u;
  double lipschitz = 1.0;
  if (dr.rows() > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dr);
    const double top = svd.singularValues()(0);
    lipschitz = std::max(top * top, 1e-12);
  }
  for (std::uint32_t bits = 0; bits < patterns; ++bits) {
    Eigen::VectorXd sigma(s);
    sigma(0) = 1.0;
    for (int i = 1; i < s; ++i) sigma(i) = (bits >> (i - 1)) & 1u ? -1.0 : 1.0;
    const Eigen::VectorXd c = ds.transpose() * sigma;
    double bound = c.norm();
    Eigen::VectorXd residual_dir = c;
    if (dr.rows() > 0) {
      Eigen::VectorXd w = Eigen::VectorXd::Zero(dr.rows());
      for (int t = 0; t < opts.dual_iterations; ++t) {
        const Eigen::VectorXd residual = c - dr.transpose() * w;
        const double value = residual.norm();
        if (value < bound) {
          bound = value;
          residual_dir = residual;
        }
        Eigen::VectorXd grad = -(dr * residual);
        w -= grad / lipschitz;
        for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = std::clamp(w(i), -1.0, 1.0);
      }
      const Eigen::VectorXd residual = c - dr.transpose() * w;
      if (residual.norm() < bound) {
        bound = residual.norm();
        residual_dir = residual;
      }
    }
    sup_bound = std::max(sup_bound, bound);
    consider_primal(residual_dir);  // the dual residual direction attains the inner sup
  }

  if (sup_bound <= 1e-10) return Interval{kInf, kInf};  // denominator never positive

  // Primal refinement: subgradient ascent over the unit ball plus random
  // restarts, evaluated with the true two-norm ratio.
  SplitMix64 rng(opts.seed);
  Eigen::VectorXd start = best_direction;
  for (int attempt = 0; attempt < opts.primal_restarts; ++attempt) {
    Eigen::VectorXd f = start;
    if (f.norm() < 1e-12) {
      for (Eigen::Index i = 0; i < n; ++i) f(i) = rng.next_gaussian();
      f.normalize();
    }
    Eigen::VectorXd sigma(s);
    {
      const Eigen::VectorXd image = ds * f;
      for (Eigen::Index i = 0; i < image.size(); ++i)
        sigma(i) = image(i) >= 0.0 ? 1.0 : -1.0;
    }
    for (int t = 1; t <= opts.primal_iterations; ++t) {
      Eigen::VectorXd sub = ds.transpose() * sigma;
      if (dr.rows() > 0) {
        const Eigen::VectorXd off = dr * f;
        Eigen::VectorXd signs(off.size());
        for (Eigen::Index i = 0; i < off.size(); ++i) signs(i) = off(i) >= 0.0 ? 1.0 : -1.0;
        sub -= dr.transpose() * signs;
      }
      const double norm = sub.norm();
      if (norm < 1e-14) break;
      f += (0.5 / std::sqrt(static_cast<double>(t))) * sub / norm;
      if (f.norm() > 1.0) f.normalize();
      consider_primal(f);
    }
    // fresh random start for the next attempt
    for (Eigen::Index i = 0; i < n; ++i) start(i) = rng.next_gaussian();
    start.normalize();
  }

  Interval interval;
  interval.lower = scale / sup_bound;
  interval.upper = best_ratio > 1e-14 ? scale / best_ratio : kInf;
  if (interval.lower > interval.upper) interval.lower = interval.upper;  // fp dust only
  return interval;
}

std::vector<FactorReport> table1_report(GraphFamily family, const std::vector<int>& sizes,
                                        const SprimePolicy& policy) {
  std::vector<FactorReport> reports;
  for (int size : sizes) {
    DirectedGraph g;
    std::string name;
    switch (family) {
      case GraphFamily::path:
        g = path_graph(size);
        name = "path";
        break;
      case GraphFamily::star:
        g = star_graph(size);
        name = "star";
        break;
      case GraphFamily::cycle:
        g = cycle_graph(size);
        name = "cycle";
        break;
      case GraphFamily::grid2d: {
        const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(size))));
        if (side * side != size)
          fail(ErrorCode::BadShape, "grid sizes must be perfect squares of the vertex count");
        g = grid_graph(side, side);
        name = "grid2d";
        break;
      }
    }
    const Eigen::MatrixXd d = incidence_matrix(g).entries;
    FactorReport report;
    report.family = name;
    report.n = g.n;
    report.m = g.m();
    report.rho = inverse_scaling_factor(d);
    report.kappa_strong = std::numeric_limits<double>::quiet_NaN();
    report.kappa_weak_lower = std::numeric_limits<double>::quiet_NaN();
    report.kappa_weak_upper = std::numeric_limits<double>::quiet_NaN();

    std::vector<int> sprime;
    if (policy.kind == SprimePolicy::Kind::first_k) {
      for (int i = 1; i <= std::min(policy.k, g.m()); ++i) sprime.push_back(i);
    } else if (policy.kind == SprimePolicy::Kind::explicit_list) {
      sprime = policy.edges;
    }
    report.sprime = sprime;
    if (policy.kind != SprimePolicy::Kind::none) {
      report.kappa_strong = strong_compat(d, sprime);
      if (static_cast<int>(sprime.size()) <= WeakCompatOptions{}.max_signs) {
        const Interval weak = weak_compat_bounds(d, sprime);
        report.kappa_weak_lower = weak.lower;
        report.kappa_weak_upper = weak.upper;
      }
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace tvsyn
