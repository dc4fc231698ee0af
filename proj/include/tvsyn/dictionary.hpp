#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "tvsyn/graph.hpp"

namespace tvsyn {

// l1_image: every atom x has ||D x||_1 = 1.
// unit_row: every atom is a raw bordered-inverse column (B_j x = 1), the
// convention of the worked closed-form tables.
enum class Normalization { l1_image, unit_row };

struct DictProvenance {
  enum class Kind { recipe, tree, cuts, closed_form };
  Kind kind = Kind::recipe;
  std::string family;  // "path", "branched", "cycle", ... for closed forms
  int order = 1;
};

struct Dictionary {
  Eigen::MatrixXd nullspace_block;  // n x (n - r), written as "J" on disk
  Eigen::MatrixXd atoms;            // n x p
  Normalization normalization = Normalization::l1_image;
  DictProvenance provenance;

  Eigen::Index n() const { return atoms.rows() > 0 ? atoms.rows() : nullspace_block.rows(); }
  Eigen::Index p() const { return atoms.cols(); }
  Eigen::Index r() const { return n() - nullspace_block.cols(); }
};

struct SynthesisOptions {
  // Rows spanning N(D); orthonormal nullspace basis when absent. The worked
  // examples use e_1' for trees and 1_n' for cycles.
  std::optional<Eigen::MatrixXd> border_rows;
  long long max_subsets = 200000;
};

// The full recipe: enumerate rank-r row subsets, invert each bordered
// submatrix, pool, normalize, dedup, prune, canonicalize.
Dictionary synthesize_dictionary(const Operator& op, Normalization norm,
                                 const SynthesisOptions& opts = {});

// Tree shortcut: [e_root'; D]^{-1}; the all-ones column is unpenalized and the
// remaining columns are signed subtree indicators, one per edge.
Dictionary tree_dictionary(const DirectedGraph& g, int root);

// Cut-partition shortcut: one atom indicator(V2)/|cut| per connected
// two-sided partition, plus the all-ones unpenalized direction.
Dictionary cut_dictionary(const DirectedGraph& g, int root, int max_vertices = 20);

// Closed forms for the worked n-vertex families, k in {1,2,3}, in the
// unit-row convention.
Dictionary closed_form_path(int n, int k);
Dictionary closed_form_branched(int n, int b, int n1, int k);
Dictionary closed_form_cycle(int n, int k);

// Applies the cyclic shift T (T e_1 = e_2) for powers 0..count-1 to every
// column; output is the pre-dedup pool, count blocks of the input columns.
Eigen::MatrixXd rotate_atoms(const Eigen::MatrixXd& atoms, int count);

struct PruneResult {
  std::vector<int> kept;     // 0-based column indices into the input
  std::vector<int> removed;
};

// Removes atom k when it lies in the convex hull of +-(surviving others),
// testing in ascending index order against the survivors.
PruneResult prune_convex_hull(const Eigen::MatrixXd& atoms, double tol = 1e-8);

// Centered atom sets match up to sign and per-atom positive rescaling.
bool dictionaries_equivalent(const Dictionary& a, const Dictionary& b,
                             const Operator& op, double tol = 1e-7);

// Rescale atoms so that ||D x||_1 = 1. unit_row targets are only valid when
// the dictionary already carries that convention.
Dictionary renormalized(const Dictionary& d, const Operator& op, Normalization target);

struct ClosedFormFamily {
  enum class Kind { path, cycle, branched };
  Kind kind = Kind::path;
  int b = 0;
  int n1 = 0;
};

// Detects whether g is one of the canonically labeled closed-form families.
std::optional<ClosedFormFamily> detect_closed_form_family(const DirectedGraph& g);

}  // namespace tvsyn
