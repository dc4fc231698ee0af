#include "tvsyn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tvsyn/errors.hpp"

namespace tvsyn {

namespace {

std::vector<std::vector<int>> undirected_adjacency(const DirectedGraph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.n) + 1);
  for (const auto& [tail, head] : g.edges) {
    adj[static_cast<std::size_t>(tail)].push_back(head);
    adj[static_cast<std::size_t>(head)].push_back(tail);
  }
  return adj;
}

// Union-find over 1-based vertices.
struct DisjointSet {
  std::vector<int> parent;

  explicit DisjointSet(int n) : parent(static_cast<std::size_t>(n) + 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  }

  bool unite(int a, int b) {
    const int ra = find(a);
    const int rb = find(b);
    if (ra == rb) return false;
    parent[static_cast<std::size_t>(ra)] = rb;
    return true;
  }
};

bool subset_connected(const DirectedGraph& g, std::uint32_t mask) {
  if (mask == 0) return false;
  int start = -1;
  for (int v = 1; v <= g.n; ++v) {
    if (mask & (1u << (v - 1))) {
      start = v;
      break;
    }
  }
  std::vector<char> seen(static_cast<std::size_t>(g.n) + 1, 0);
  std::vector<int> stack{start};
  seen[static_cast<std::size_t>(start)] = 1;
  int reached = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++reached;
    for (const auto& [tail, head] : g.edges) {
      int other = -1;
      if (tail == v)
        other = head;
      else if (head == v)
        other = tail;
      else
        continue;
      if ((mask & (1u << (other - 1))) && !seen[static_cast<std::size_t>(other)]) {
        seen[static_cast<std::size_t>(other)] = 1;
        stack.push_back(other);
      }
    }
  }
  int total = 0;
  for (int v = 1; v <= g.n; ++v)
    if (mask & (1u << (v - 1))) ++total;
  return reached == total;
}

}  // namespace

DirectedGraph from_edge_list(int n, const std::vector<std::pair<int, int>>& pairs) {
  if (n < 1) fail(ErrorCode::IndexOutOfRange, "vertex count must be positive");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [tail, head] = pairs[i];
    if (tail < 1 || tail > n || head < 1 || head > n)
      fail(ErrorCode::IndexOutOfRange,
           "edge " + std::to_string(i + 1) + " references a vertex outside 1.." +
               std::to_string(n));
    if (tail == head)
      fail(ErrorCode::SelfLoop, "edge " + std::to_string(i + 1) + " is a self-loop");
  }
  return DirectedGraph{n, pairs};
}

Operator incidence_matrix(const DirectedGraph& g) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(g.m(), g.n);
  for (int i = 0; i < g.m(); ++i) {
    const auto& [tail, head] = g.edges[static_cast<std::size_t>(i)];
    d(i, tail - 1) = -1.0;
    d(i, head - 1) = 1.0;
  }
  return Operator{std::move(d), Operator::Kind::incidence, 1};
}

DirectedGraph line_graph(const DirectedGraph& g) {
  DirectedGraph lg;
  lg.n = g.m();
  for (int i = 0; i < g.m(); ++i) {
    for (int j = 0; j < g.m(); ++j) {
      if (i == j) continue;
      if (g.edges[static_cast<std::size_t>(i)].second ==
          g.edges[static_cast<std::size_t>(j)].first)
        lg.edges.emplace_back(i + 1, j + 1);
    }
  }
  return lg;
}

Operator derivative_operator(const DirectedGraph& g, int k) {
  if (k < 1) fail(ErrorCode::BadOrder, "derivative order must be >= 1");
  Eigen::MatrixXd d = incidence_matrix(g).entries;
  DirectedGraph current = g;
  for (int order = 2; order <= k; ++order) {
    current = line_graph(current);
    if (current.edges.empty())
      fail(ErrorCode::DegenerateLineGraph,
           "line graph of order " + std::to_string(order - 1) +
               " has no edges; order-" + std::to_string(k) + " derivative undefined");
    d = incidence_matrix(current).entries * d;
  }
  return Operator{std::move(d), k == 1 ? Operator::Kind::incidence : Operator::Kind::derivative,
                  k};
}

bool is_connected(const DirectedGraph& g) { return connected_components(g).size() == 1; }

std::vector<std::vector<int>> connected_components(const DirectedGraph& g) {
  const auto adj = undirected_adjacency(g);
  std::vector<char> seen(static_cast<std::size_t>(g.n) + 1, 0);
  std::vector<std::vector<int>> components;
  for (int start = 1; start <= g.n; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> component;
    std::vector<int> stack{start};
    seen[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      component.push_back(v);
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

std::vector<EdgeSubset> enumerate_spanning_trees(const DirectedGraph& g, int max_edges) {
  if (!is_connected(g)) fail(ErrorCode::NotConnected, "graph is not connected");
  if (g.m() > max_edges)
    fail(ErrorCode::TooLarge, "spanning tree enumeration limited to " +
                                  std::to_string(max_edges) + " edges, graph has " +
                                  std::to_string(g.m()));
  const int m = g.m();
  const int want = g.n - 1;
  std::vector<EdgeSubset> trees;
  if (want == 0) {
    trees.push_back({});
    return trees;
  }
  std::vector<int> combo(static_cast<std::size_t>(want));
  std::iota(combo.begin(), combo.end(), 0);
  while (true) {
    DisjointSet ds(g.n);
    bool acyclic = true;
    for (int idx : combo) {
      const auto& [tail, head] = g.edges[static_cast<std::size_t>(idx)];
      if (!ds.unite(tail, head)) {
        acyclic = false;
        break;
      }
    }
    if (acyclic) {
      EdgeSubset subset;
      subset.reserve(combo.size());
      for (int idx : combo) subset.push_back(idx + 1);
      trees.push_back(std::move(subset));
    }
    // next lexicographic combination
    int pos = want - 1;
    while (pos >= 0 && combo[static_cast<std::size_t>(pos)] == m - want + pos) --pos;
    if (pos < 0) break;
    ++combo[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q < want; ++q)
      combo[static_cast<std::size_t>(q)] = combo[static_cast<std::size_t>(q - 1)] + 1;
  }
  return trees;
}

std::int64_t count_spanning_trees_kirchhoff(const DirectedGraph& g) {
  if (!is_connected(g)) fail(ErrorCode::NotConnected, "graph is not connected");
  if (g.n == 1) return 1;
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(g.n, g.n);
  for (const auto& [tail, head] : g.edges) {
    laplacian(tail - 1, tail - 1) += 1.0;
    laplacian(head - 1, head - 1) += 1.0;
    laplacian(tail - 1, head - 1) -= 1.0;
    laplacian(head - 1, tail - 1) -= 1.0;
  }
  const Eigen::MatrixXd minor = laplacian.block(1, 1, g.n - 1, g.n - 1);
  const double det = minor.partialPivLu().determinant();
  return static_cast<std::int64_t>(std::llround(det));
}

std::vector<Partition> enumerate_two_partitions(const DirectedGraph& g, int root,
                                                int max_vertices) {
  if (root < 1 || root > g.n) fail(ErrorCode::IndexOutOfRange, "root vertex out of range");
  if (!is_connected(g)) fail(ErrorCode::NotConnected, "graph is not connected");
  if (g.n > max_vertices || g.n > 31)
    fail(ErrorCode::TooLarge, "partition enumeration limited to " +
                                  std::to_string(std::min(max_vertices, 31)) +
                                  " vertices, graph has " + std::to_string(g.n));
  const std::uint32_t all = (1u << g.n) - 1u;
  const std::uint32_t root_bit = 1u << (root - 1);
  std::vector<Partition> partitions;
  for (std::uint32_t mask = 1; mask <= all; ++mask) {
    if (mask & root_bit) continue;
    if (mask == all) continue;  // V1 would be empty (cannot happen: root excluded)
    const std::uint32_t complement = all & ~mask;
    if (!subset_connected(g, mask) || !subset_connected(g, complement)) continue;
    Partition part;
    for (int v = 1; v <= g.n; ++v)
      if (mask & (1u << (v - 1))) part.v2.push_back(v);
    for (int i = 0; i < g.m(); ++i) {
      const auto& [tail, head] = g.edges[static_cast<std::size_t>(i)];
      const bool tail_in = (mask >> (tail - 1)) & 1u;
      const bool head_in = (mask >> (head - 1)) & 1u;
      if (tail_in != head_in) part.cut_edges.push_back(i + 1);
    }
    partitions.push_back(std::move(part));
  }
  return partitions;
}

DirectedGraph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
  return from_edge_list(n, edges);
}

DirectedGraph cycle_graph(int n) {
  if (n < 3) fail(ErrorCode::BadShape, "cycle graph needs at least 3 vertices");
  auto g = path_graph(n);
  g.edges.emplace_back(n, 1);
  return g;
}

DirectedGraph star_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int j = 2; j <= n; ++j) edges.emplace_back(1, j);
  return from_edge_list(n, edges);
}

DirectedGraph branched_path_graph(int n, int b, int n1) {
  if (!(1 < b && b < n1 && n1 < n))
    fail(ErrorCode::BadShape, "branched path needs 1 < b < n1 < n");
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n1; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(b, n1 + 1);
  for (int i = n1 + 1; i < n; ++i) edges.emplace_back(i, i + 1);
  return from_edge_list(n, edges);
}

DirectedGraph grid_graph(int rows, int cols) {
  if (rows < 1 || cols < 1) fail(ErrorCode::BadShape, "grid needs positive dimensions");
  const auto label = [cols](int r, int c) { return r * cols + c + 1; };
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(label(r, c), label(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(label(r, c), label(r + 1, c));
    }
  }
  return from_edge_list(rows * cols, edges);
}

}  // namespace tvsyn
