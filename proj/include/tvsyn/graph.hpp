#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

namespace tvsyn {

// Directed graph with vertices labeled 1..n and an ordered edge list.
// Edge i is row i of the incidence matrix, so the order is significant.
struct DirectedGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // (tail, head), 1-based

  int m() const { return static_cast<int>(edges.size()); }
};

// Dense operator with provenance (which construction produced it).
struct Operator {
  enum class Kind { incidence, derivative, generic };

  Eigen::MatrixXd entries;
  Kind kind = Kind::generic;
  int order = 0;  // derivative order; 1 for incidence

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
};

// Two-sided vertex partition: v2 is the side not containing the root,
// cut_edges are all edges with one endpoint on each side (1-based indices).
struct Partition {
  std::vector<int> v2;
  std::vector<int> cut_edges;
};

using EdgeSubset = std::vector<int>;  // sorted 1-based edge indices

DirectedGraph from_edge_list(int n, const std::vector<std::pair<int, int>>& pairs);

Operator incidence_matrix(const DirectedGraph& g);

// Vertices of the result are the edges of g (vertex i <-> edge i); result
// edges are all (i, j), i != j, with head(e_i) = tail(e_j), ordered
// lexicographically by (i, j). Anti-parallel edge pairs do produce 2-cycles.
DirectedGraph line_graph(const DirectedGraph& g);

// D^k = D_{L^{k-1}(g)} * ... * D_{L(g)} * D_g (the dimension-consistent
// composition order). Throws DegenerateLineGraph when some iterated line
// graph of order < k has no edges.
Operator derivative_operator(const DirectedGraph& g, int k);

// Connectivity is undirected throughout.
bool is_connected(const DirectedGraph& g);
std::vector<std::vector<int>> connected_components(const DirectedGraph& g);

// All edge subsets of size n-1 forming a spanning tree, each sorted,
// list in lexicographic order. Guarded by max_edges (TooLarge).
std::vector<EdgeSubset> enumerate_spanning_trees(const DirectedGraph& g, int max_edges = 24);

// Matrix-tree determinant; oracle for enumerate_spanning_trees.
std::int64_t count_spanning_trees_kirchhoff(const DirectedGraph& g);

// All partitions V = V1 u V2 with root in V1 and both induced subgraphs
// connected, sorted by V2 as a bit pattern. Guarded by max_vertices.
std::vector<Partition> enumerate_two_partitions(const DirectedGraph& g, int root,
                                                int max_vertices = 20);

// Graph families used by the examples, factor reports and closed forms.
DirectedGraph path_graph(int n);
DirectedGraph cycle_graph(int n);
DirectedGraph star_graph(int n);  // center 1, edges (1, j)
DirectedGraph branched_path_graph(int n, int b, int n1);
DirectedGraph grid_graph(int rows, int cols);  // row-major labels; right and down edges

}  // namespace tvsyn
