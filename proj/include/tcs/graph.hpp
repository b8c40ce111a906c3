// Copyright 2026 The tcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tcs/gaussian_state.hpp"

namespace tcs {

/// Unordered edge, stored with first < second.
using Edge = std::pair<Label, Label>;

inline Edge make_edge(Label u, Label v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/// Simple undirected graph over labelled nodes, unit edge weights.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::vector<Label> nodes);

  void add_node(Label node);
  void add_edge(Label u, Label v);

  const std::vector<Label>& nodes() const { return nodes_; }
  const std::set<Edge>& edges() const { return edges_; }
  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  bool contains(Label node) const { return adjacency_.count(node) != 0; }
  bool has_edge(Label u, Label v) const { return edges_.count(make_edge(u, v)) != 0; }
  const std::set<Label>& neighbors(Label node) const;
  std::size_t degree(Label node) const { return neighbors(node).size(); }

  /// Subgraph induced on `keep` (nodes not in the graph are an error).
  Graph induced(const std::vector<Label>& keep) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<Label> nodes_;
  std::set<Edge> edges_;
  std::map<Label, std::set<Label>> adjacency_;
};

/// Symmetric 0/1 adjacency matrix in node order.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> adjacency_matrix(const Graph& g) {
  const auto n = static_cast<Index>(g.num_nodes());
  std::map<Label, Index> pos;
  for (Index i = 0; i < n; ++i) pos[g.nodes()[static_cast<std::size_t>(i)]] = i;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    a(pos[u], pos[v]) = Scalar(1);
    a(pos[v], pos[u]) = Scalar(1);
  }
  return a;
}

/// Path graph on 1..n.
Graph wire_graph(std::int64_t n);

/// Path on 1..n plus the long links (i, i + m): a square lattice of height m
/// wrapped on a cylinder with one unit of shear.
Graph sheared_cylinder_graph(std::int64_t n, std::int64_t m);

/// rows x cols grid. Node (row, col), both 1-based, has label
/// (col - 1) * rows + row, so each column is a contiguous run of labels.
Graph square_lattice_graph(std::int64_t rows, std::int64_t cols);

inline Label grid_label(std::int64_t rows, std::int64_t row, std::int64_t col) {
  return (col - 1) * rows + row;
}

/// Removes `nodes` and all incident edges.
Graph delete_nodes(const Graph& g, const std::set<Label>& nodes);

/// Nodes of 1..n that are multiples of m: the q-deletion set that unfolds
/// a sheared cylinder.
std::set<Label> every_mth_node(std::int64_t n, std::int64_t m);

struct GridCell {
  std::int64_t row = 0;
  std::int64_t col = 0;
  friend bool operator==(const GridCell&, const GridCell&) = default;
};

struct UnfoldResult {
  bool unfolds = false;
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::map<Label, GridCell> relabel;
  std::optional<Edge> offending_edge;  // first mismatching edge, source labels
  std::string reason;
};

/// Checks that a sheared cylinder with every m-th node deleted is exactly an
/// (m - 1) x K grid, under the explicit map j -> (j mod m, ceil(j / m)).
UnfoldResult unfolds_to_grid(const Graph& g, std::int64_t m);

/// Edge-list text: header `# nodes=N`, then one `u v` line per edge. Graphs
/// whose nodes are not exactly 1..N add a `# labels=a,b,...` line.
void write_edge_list(std::ostream& os, const Graph& g);
Graph read_edge_list(std::istream& is);

}  // namespace tcs
