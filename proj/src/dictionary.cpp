#include "tvsyn/dictionary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tvsyn/errors.hpp"
#include "tvsyn/linalg.hpp"
#include "tvsyn/simplex.hpp"

namespace tvsyn {

namespace {

constexpr double kDedupTol = 1e-8;

// Sign convention for recipe atoms: first nonzero coordinate positive.
void canonicalize_sign(Eigen::VectorXd& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) > 1e-12) {
      if (x(i) < 0.0) x = -x;
      return;
    }
  }
}

// Atoms differing by a nullspace component or a positive rescaling are the
// same polytope vertex; comparisons run on centered l1-image copies.
Eigen::VectorXd geometry_signature(const Eigen::VectorXd& atom, const Eigen::MatrixXd& null_proj,
                                   const Eigen::MatrixXd& d) {
  Eigen::VectorXd centered = atom - null_proj * atom;
  const double image_l1 = (d * atom).lpNorm<1>();
  if (image_l1 > 1e-14) centered /= image_l1;
  return centered;
}

bool same_up_to_sign(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol) {
  return (a - b).lpNorm<Eigen::Infinity>() <= tol || (a + b).lpNorm<Eigen::Infinity>() <= tol;
}

long double binomial(int m, int r) {
  long double value = 1.0L;
  for (int i = 1; i <= r; ++i) value = value * (m - r + i) / i;
  return value;
}

struct AtomPool {
  std::vector<Eigen::VectorXd> raw;
  std::vector<Eigen::VectorXd> signature;
};

// First-occurrence dedup up to sign on the signatures.
std::vector<int> dedup_indices(const AtomPool& pool, double tol) {
  std::vector<int> kept;
  for (std::size_t i = 0; i < pool.signature.size(); ++i) {
    bool duplicate = false;
    for (int j : kept) {
      if (same_up_to_sign(pool.signature[i], pool.signature[static_cast<std::size_t>(j)], tol)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) kept.push_back(static_cast<int>(i));
  }
  return kept;
}

bool lex_greater(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) > b(i);
  }
  return false;
}

}  // namespace

Dictionary synthesize_dictionary(const Operator& op, Normalization norm,
                                 const SynthesisOptions& opts) {
  const Eigen::MatrixXd& d = op.entries;
  const int m = static_cast<int>(d.rows());
  const int n = static_cast<int>(d.cols());
  const int r = rank(d);
  if (r == 0) fail(ErrorCode::RankZero, "operator has rank zero");
  if (binomial(m, r) > static_cast<long double>(opts.max_subsets))
    fail(ErrorCode::TooManySubsets,
         "candidate row subsets exceed the enumeration guard of " +
             std::to_string(opts.max_subsets));

  Eigen::MatrixXd border;
  if (opts.border_rows) {
    border = *opts.border_rows;
    if (border.rows() != n - r || border.cols() != n)
      fail(ErrorCode::DimensionMismatch, "border rows must be (n-r) x n");
  } else {
    border = nullspace_basis(d).transpose();
  }

  const Eigen::MatrixXd null_basis = nullspace_basis(d);
  const Eigen::MatrixXd null_proj = null_basis * null_basis.transpose();

  Eigen::MatrixXd j_block;
  bool have_j = false;
  AtomPool pool;

  std::vector<int> combo(static_cast<std::size_t>(r));
  std::iota(combo.begin(), combo.end(), 0);
  while (true) {
    const Eigen::MatrixXd d_sub = rows_subset(d, combo);
    if (rank(d_sub) == r) {
      Eigen::MatrixXd inverse;
      try {
        inverse = invert(vstack(border, d_sub));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Singular)
          fail(ErrorCode::InversionFailure,
               std::string("degenerate bordered submatrix: ") + e.what());
        throw;
      }
      if (!have_j) {
        j_block = inverse.leftCols(n - r);
        have_j = true;
      }
      for (int c = n - r; c < n; ++c) {
        Eigen::VectorXd column = inverse.col(c);
        pool.signature.push_back(geometry_signature(column, null_proj, d));
        pool.raw.push_back(std::move(column));
      }
    }
    // next lexicographic combination of size r from [m]
    int pos = r - 1;
    while (pos >= 0 && combo[static_cast<std::size_t>(pos)] == m - r + pos) --pos;
    if (pos < 0) break;
    ++combo[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q < r; ++q)
      combo[static_cast<std::size_t>(q)] = combo[static_cast<std::size_t>(q - 1)] + 1;
  }

  const std::vector<int> survivors = dedup_indices(pool, kDedupTol);

  Eigen::MatrixXd candidates(n, static_cast<Eigen::Index>(survivors.size()));
  for (std::size_t i = 0; i < survivors.size(); ++i)
    candidates.col(static_cast<Eigen::Index>(i)) =
        pool.signature[static_cast<std::size_t>(survivors[i])];
  const PruneResult pruned = prune_convex_hull(candidates, kDedupTol);

  std::vector<Eigen::VectorXd> finals;
  for (int idx : pruned.kept) {
    Eigen::VectorXd atom = pool.raw[static_cast<std::size_t>(survivors[static_cast<std::size_t>(idx)])];
    if (norm == Normalization::l1_image) {
      const double image_l1 = (d * atom).lpNorm<1>();
      atom /= image_l1;
    }
    canonicalize_sign(atom);
    finals.push_back(std::move(atom));
  }
  std::sort(finals.begin(), finals.end(), lex_greater);

  Dictionary dict;
  dict.nullspace_block = have_j ? j_block : Eigen::MatrixXd::Zero(n, n - r);
  dict.atoms.resize(n, static_cast<Eigen::Index>(finals.size()));
  for (std::size_t i = 0; i < finals.size(); ++i)
    dict.atoms.col(static_cast<Eigen::Index>(i)) = finals[i];
  dict.normalization = norm;
  dict.provenance = DictProvenance{DictProvenance::Kind::recipe, "", op.order};
  return dict;
}

Dictionary tree_dictionary(const DirectedGraph& g, int root) {
  if (root < 1 || root > g.n) fail(ErrorCode::IndexOutOfRange, "root vertex out of range");
  if (!is_connected(g) || g.m() != g.n - 1)
    fail(ErrorCode::NotTree, "tree dictionary needs a connected tree");
  Eigen::MatrixXd border = Eigen::MatrixXd::Zero(1, g.n);
  border(0, root - 1) = 1.0;
  const Eigen::MatrixXd inverse = invert(vstack(border, incidence_matrix(g).entries));
  Dictionary dict;
  dict.nullspace_block = inverse.leftCols(1);
  dict.atoms = inverse.rightCols(g.n - 1);
  dict.normalization = Normalization::l1_image;
  dict.provenance = DictProvenance{DictProvenance::Kind::tree, "", 1};
  return dict;
}

Dictionary cut_dictionary(const DirectedGraph& g, int root, int max_vertices) {
  const auto partitions = enumerate_two_partitions(g, root, max_vertices);
  Dictionary dict;
  dict.nullspace_block = Eigen::MatrixXd::Ones(g.n, 1);
  dict.atoms = Eigen::MatrixXd::Zero(g.n, static_cast<Eigen::Index>(partitions.size()));
  for (std::size_t j = 0; j < partitions.size(); ++j) {
    const double cut_size = static_cast<double>(partitions[j].cut_edges.size());
    for (int v : partitions[j].v2)
      dict.atoms(v - 1, static_cast<Eigen::Index>(j)) = 1.0 / cut_size;
  }
  dict.normalization = Normalization::l1_image;
  dict.provenance = DictProvenance{DictProvenance::Kind::cuts, "", 1};
  return dict;
}

Dictionary closed_form_path(int n, int k) {
  if (k < 1 || k > 3 || n <= k) fail(ErrorCode::BadOrder, "path closed form needs k in {1,2,3}, n > k");
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      double value = 0.0;
      if (k == 1) {
        value = j <= i ? 1.0 : 0.0;
      } else if (k == 2) {
        if (j == 1)
          value = 1.0;
        else
          value = j <= i ? static_cast<double>(i - j + 1) : 0.0;
      } else {
        if (j == 1)
          value = 1.0;
        else if (j == 2)
          value = static_cast<double>(i - 1);
        else
          value = j <= i ? static_cast<double>(i - j + 1) * (i - j + 2) / 2.0 : 0.0;
      }
      v(i - 1, j - 1) = value;
    }
  }
  Dictionary dict;
  dict.nullspace_block = v.leftCols(k);
  dict.atoms = v.rightCols(n - k);
  dict.normalization = Normalization::unit_row;
  dict.provenance = DictProvenance{DictProvenance::Kind::closed_form, "path", k};
  return dict;
}

Dictionary closed_form_branched(int n, int b, int n1, int k) {
  if (!(1 < b && b < n1 && n1 < n)) fail(ErrorCode::BadShape, "branched path needs 1 < b < n1 < n");
  if (k < 1 || k > 3 || n <= k) fail(ErrorCode::BadOrder, "branched closed form needs k in {1,2,3}, n > k");
  const auto ramp2 = [](int t) { return static_cast<double>(t + 1) * (t + 2) / 2.0; };
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      double value = 0.0;
      if (k == 1) {
        value = (j <= i ? 1.0 : 0.0) - ((n1 + 1 <= i && b + 1 <= j && j <= n1) ? 1.0 : 0.0);
      } else if (k == 2) {
        if (j == 1) {
          value = 1.0;
        } else {
          if (j <= i && i <= n1) value += static_cast<double>(i - j + 1);
          if (i >= n1 + 1 && j <= b) value += static_cast<double>(i - n1 + b - j + 1);
          if (n1 + 1 <= j && j <= i) value += static_cast<double>(i - j + 1);
        }
      } else {
        if (j == 1) {
          value = 1.0;
        } else if (j == 2) {
          value = i <= n1 ? static_cast<double>(i - 1) : static_cast<double>(i - 1 - n1 + b);
        } else {
          if (j <= i && i <= n1) value += ramp2(i - j);
          if (i >= j && j > n1) value += ramp2(i - j);
          if (i > n1 && j <= b) value += ramp2(i - j - n1 + b);
        }
      }
      v(i - 1, j - 1) = value;
    }
  }
  Dictionary dict;
  dict.nullspace_block = v.leftCols(k);
  dict.atoms = v.rightCols(n - k);
  dict.normalization = Normalization::unit_row;
  dict.provenance = DictProvenance{DictProvenance::Kind::closed_form, "branched", k};
  return dict;
}

Dictionary closed_form_cycle(int n, int k) {
  if (k < 1 || k > 3 || n < 3)
    fail(ErrorCode::BadOrder, "cycle closed form needs k in {1,2,3}, n >= 3");
  const double dn = static_cast<double>(n);
  Eigen::MatrixXd base(n, n - 1);
  if (k == 1) {
    for (int j = 2; j <= n; ++j) {
      const double level = static_cast<double>(j - 1) / dn;
      for (int i = 1; i <= n; ++i) base(i - 1, j - 2) = i < j ? level - 1.0 : level;
    }
  } else if (k == 2) {
    for (int j = 2; j <= n; ++j) {
      Eigen::VectorXd u(n);
      u(0) = static_cast<double>(n - j + 2);
      for (int i = 2; i <= j - 1; ++i)
        u(i - 1) = static_cast<double>(n - j + 2) -
                   static_cast<double>(i - 1) * (n - j + 1) / static_cast<double>(j - 1);
      for (int i = j; i <= n; ++i) u(i - 1) = static_cast<double>(i - j + 1);
      const double mean = static_cast<double>(n - j + 3) / 2.0;
      base.col(j - 2) =
          (static_cast<double>(j - 1) / dn) * (u.array() - mean).matrix();
    }
  } else {
    for (int j = 1; j <= n - 1; ++j) {
      const double shift = static_cast<double>(j) * (n - j) * (n - 2 * j + 3) / (12.0 * dn);
      Eigen::VectorXd v(n);
      for (int i = 1; i <= j; ++i)
        v(i - 1) = static_cast<double>(n - j) / (2.0 * dn) * (i - 1) * (j - i) + shift;
      for (int i = j + 1; i <= n; ++i)
        v(i - 1) = -static_cast<double>(j) / (2.0 * dn) * (i - j) * (n + 1 - i) + shift;
      base.col(j - 1) = v;
    }
  }

  const Eigen::MatrixXd pooled = rotate_atoms(base, n);
  const Eigen::MatrixXd d = derivative_operator(cycle_graph(n), k).entries;
  const Eigen::MatrixXd null_basis = nullspace_basis(d);
  const Eigen::MatrixXd null_proj = null_basis * null_basis.transpose();
  AtomPool pool;
  for (Eigen::Index c = 0; c < pooled.cols(); ++c) {
    pool.raw.push_back(pooled.col(c));
    pool.signature.push_back(geometry_signature(pooled.col(c), null_proj, d));
  }
  const std::vector<int> kept = dedup_indices(pool, kDedupTol);

  Dictionary dict;
  dict.nullspace_block = Eigen::MatrixXd::Constant(n, 1, 1.0 / dn);
  dict.atoms.resize(n, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i)
    dict.atoms.col(static_cast<Eigen::Index>(i)) = pool.raw[static_cast<std::size_t>(kept[i])];
  dict.normalization = Normalization::unit_row;
  dict.provenance = DictProvenance{DictProvenance::Kind::closed_form, "cycle", k};
  return dict;
}

Eigen::MatrixXd rotate_atoms(const Eigen::MatrixXd& atoms, int count) {
  const Eigen::Index n = atoms.rows();
  if (count < 1 || count > n) fail(ErrorCode::BadShape, "rotation count must be in 1..n");
  Eigen::MatrixXd out(n, atoms.cols() * count);
  for (int shift = 0; shift < count; ++shift) {
    for (Eigen::Index c = 0; c < atoms.cols(); ++c) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index src = (i - shift % n + n) % n;
        out(i, static_cast<Eigen::Index>(shift) * atoms.cols() + c) = atoms(src, c);
      }
    }
  }
  return out;
}

PruneResult prune_convex_hull(const Eigen::MatrixXd& atoms, double tol) {
  const Eigen::Index p = atoms.cols();
  if (p < 1) fail(ErrorCode::BadShape, "prune needs at least one atom");
  const Eigen::Index n = atoms.rows();
  std::vector<char> alive(static_cast<std::size_t>(p), 1);
  for (Eigen::Index k = 0; k < p; ++k) {
    std::vector<int> others;
    for (Eigen::Index j = 0; j < p; ++j)
      if (j != k && alive[static_cast<std::size_t>(j)]) others.push_back(static_cast<int>(j));
    if (others.empty()) continue;
    // feasibility of atom_k = [X, -X] theta, sum(theta) = 1, theta >= 0
    Eigen::MatrixXd constraints(n + 1, 2 * static_cast<Eigen::Index>(others.size()));
    for (std::size_t j = 0; j < others.size(); ++j) {
      constraints.col(static_cast<Eigen::Index>(j)).head(n) = atoms.col(others[j]);
      constraints.col(static_cast<Eigen::Index>(others.size() + j)).head(n) = -atoms.col(others[j]);
    }
    constraints.row(n).setOnes();
    Eigen::VectorXd rhs(n + 1);
    rhs.head(n) = atoms.col(k);
    rhs(n) = 1.0;
    if (equality_feasibility(constraints, rhs, tol).feasible)
      alive[static_cast<std::size_t>(k)] = 0;
  }
  PruneResult result;
  for (Eigen::Index j = 0; j < p; ++j)
    (alive[static_cast<std::size_t>(j)] ? result.kept : result.removed)
        .push_back(static_cast<int>(j));
  return result;
}

bool dictionaries_equivalent(const Dictionary& a, const Dictionary& b, const Operator& op,
                             double tol) {
  if (a.n() != b.n() || a.n() != op.cols())
    fail(ErrorCode::ShapeMismatch, "dictionaries live in different spaces");
  if (a.p() != b.p()) return false;
  const Eigen::MatrixXd null_basis = nullspace_basis(op.entries);
  const Eigen::MatrixXd null_proj = null_basis * null_basis.transpose();
  const auto signatures = [&](const Dictionary& dict) {
    std::vector<Eigen::VectorXd> sigs;
    for (Eigen::Index c = 0; c < dict.p(); ++c) {
      Eigen::VectorXd centered = dict.atoms.col(c) - null_proj * dict.atoms.col(c);
      const double norm2 = centered.norm();
      if (norm2 > 1e-12) centered /= norm2;
      canonicalize_sign(centered);
      sigs.push_back(std::move(centered));
    }
    return sigs;
  };
  const auto sa = signatures(a);
  const auto sb = signatures(b);
  std::vector<char> used(sb.size(), 0);
  for (const auto& sig : sa) {
    bool matched = false;
    for (std::size_t j = 0; j < sb.size(); ++j) {
      if (!used[j] && (sig - sb[j]).lpNorm<Eigen::Infinity>() <= tol) {
        used[j] = 1;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

Dictionary renormalized(const Dictionary& d, const Operator& op, Normalization target) {
  if (target == d.normalization) return d;
  if (target == Normalization::unit_row)
    fail(ErrorCode::BadShape, "cannot recover the row convention from l1-image atoms");
  Dictionary out = d;
  for (Eigen::Index c = 0; c < out.atoms.cols(); ++c) {
    const double image_l1 = (op.entries * out.atoms.col(c)).lpNorm<1>();
    if (image_l1 < 1e-12)
      fail(ErrorCode::BadShape, "atom has a vanishing operator image; cannot normalize");
    out.atoms.col(c) /= image_l1;
  }
  out.normalization = Normalization::l1_image;
  return out;
}

std::optional<ClosedFormFamily> detect_closed_form_family(const DirectedGraph& g) {
  const auto sorted_edges = [](const DirectedGraph& graph) {
    auto edges = graph.edges;
    std::sort(edges.begin(), edges.end());
    return edges;
  };
  const auto mine = sorted_edges(g);
  if (g.n >= 2 && mine == sorted_edges(path_graph(g.n)))
    return ClosedFormFamily{ClosedFormFamily::Kind::path, 0, 0};
  if (g.n >= 3 && mine == sorted_edges(cycle_graph(g.n)))
    return ClosedFormFamily{ClosedFormFamily::Kind::cycle, 0, 0};
  for (int n1 = 3; n1 < g.n; ++n1) {
    for (int b = 2; b < n1; ++b) {
      if (mine == sorted_edges(branched_path_graph(g.n, b, n1)))
        return ClosedFormFamily{ClosedFormFamily::Kind::branched, b, n1};
    }
  }
  return std::nullopt;
}

}  // namespace tvsyn
