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

#include "tcs/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tcs {

Graph::Graph(std::vector<Label> nodes) {
  for (Label n : nodes) add_node(n);
}

void Graph::add_node(Label node) {
  if (!adjacency_.emplace(node, std::set<Label>{}).second) {
    throw std::invalid_argument("Graph: duplicate node " + std::to_string(node));
  }
  nodes_.push_back(node);
}

void Graph::add_edge(Label u, Label v) {
  if (u == v) throw std::invalid_argument("Graph: self-loop on " + std::to_string(u));
  if (!contains(u) || !contains(v)) {
    throw std::invalid_argument("Graph: edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                ") references a missing node");
  }
  edges_.insert(make_edge(u, v));
  adjacency_[u].insert(v);
  adjacency_[v].insert(u);
}

const std::set<Label>& Graph::neighbors(Label node) const {
  auto it = adjacency_.find(node);
  if (it == adjacency_.end()) {
    throw std::invalid_argument("Graph: unknown node " + std::to_string(node));
  }
  return it->second;
}

Graph Graph::induced(const std::vector<Label>& keep) const {
  Graph out;
  for (Label n : keep) {
    if (!contains(n)) throw std::invalid_argument("Graph: unknown node " + std::to_string(n));
    out.add_node(n);
  }
  for (const auto& [u, v] : edges_) {
    if (out.contains(u) && out.contains(v)) out.add_edge(u, v);
  }
  return out;
}

Graph wire_graph(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("wire_graph: need at least one node");
  Graph g;
  for (Label i = 1; i <= n; ++i) g.add_node(i);
  for (Label i = 1; i < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph sheared_cylinder_graph(std::int64_t n, std::int64_t m) {
  if (m < 2) throw std::invalid_argument("sheared_cylinder_graph: width must be >= 2");
  if (n < m) throw std::invalid_argument("sheared_cylinder_graph: need nodes >= width");
  Graph g = wire_graph(n);
  for (Label i = 1; i + m <= n; ++i) g.add_edge(i, i + m);
  return g;
}

Graph square_lattice_graph(std::int64_t rows, std::int64_t cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("square_lattice_graph: zero dimension");
  Graph g;
  for (Label i = 1; i <= rows * cols; ++i) g.add_node(i);
  for (std::int64_t c = 1; c <= cols; ++c) {
    for (std::int64_t r = 1; r <= rows; ++r) {
      if (r < rows) g.add_edge(grid_label(rows, r, c), grid_label(rows, r + 1, c));
      if (c < cols) g.add_edge(grid_label(rows, r, c), grid_label(rows, r, c + 1));
    }
  }
  return g;
}

Graph delete_nodes(const Graph& g, const std::set<Label>& nodes) {
  std::vector<Label> keep;
  for (Label n : nodes) {
    if (!g.contains(n)) throw std::invalid_argument("delete_nodes: unknown node " + std::to_string(n));
  }
  for (Label n : g.nodes())
    if (!nodes.count(n)) keep.push_back(n);
  return g.induced(keep);
}

std::set<Label> every_mth_node(std::int64_t n, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("every_mth_node: width must be positive");
  std::set<Label> out;
  for (Label j = m; j <= n; j += m) out.insert(j);
  return out;
}

UnfoldResult unfolds_to_grid(const Graph& g, std::int64_t m) {
  if (m < 2) throw std::invalid_argument("unfolds_to_grid: width must be >= 2");
  UnfoldResult res;
  res.rows = m - 1;
  Label max_node = 0;
  for (Label j : g.nodes()) max_node = std::max(max_node, j);
  res.cols = (max_node + m - 1) / m;

  // Inverse map, grid label -> source label; a node on a deleted row maps nowhere.
  std::map<Label, Label> source_of;
  std::map<Label, Label> grid_of;
  for (Label j : g.nodes()) {
    if (j < 1) {
      res.reason = "node " + std::to_string(j) + " is outside 1..N";
      return res;
    }
    const GridCell cell{j % m, (j + m - 1) / m};
    res.relabel[j] = cell;
    if (cell.row == 0) {
      res.reason = "node " + std::to_string(j) + " lies on a deleted row";
      continue;
    }
    const Label target = grid_label(res.rows, cell.row, cell.col);
    grid_of[j] = target;
    source_of[target] = j;
  }

  for (const auto& e : g.edges()) {
    if (!grid_of.count(e.first) || !grid_of.count(e.second)) {
      res.offending_edge = e;
      return res;
    }
  }
  if (!res.reason.empty()) return res;
  if (res.cols < 1) {
    res.reason = "empty graph";
    return res;
  }

  const Graph grid = square_lattice_graph(res.rows, res.cols);
  for (Label t : grid.nodes()) {
    if (!source_of.count(t)) {
      res.reason = "grid cell " + std::to_string(t) + " has no source node";
      return res;
    }
  }
  std::set<Edge> mapped;
  for (const auto& [u, v] : g.edges()) {
    const Edge e = make_edge(grid_of.at(u), grid_of.at(v));
    if (!grid.edges().count(e)) {
      res.offending_edge = make_edge(u, v);
      res.reason = "edge is not a grid edge";
      return res;
    }
    mapped.insert(e);
  }
  for (const auto& e : grid.edges()) {
    if (!mapped.count(e)) {
      res.offending_edge = make_edge(source_of.at(e.first), source_of.at(e.second));
      res.reason = "grid edge missing from graph";
      return res;
    }
  }
  res.reason.clear();
  res.unfolds = true;
  return res;
}

void write_edge_list(std::ostream& os, const Graph& g) {
  os << "# nodes=" << g.num_nodes() << '\n';
  bool canonical = true;
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    if (g.nodes()[i] != static_cast<Label>(i + 1)) canonical = false;
  }
  if (!canonical) {
    os << "# labels=";
    for (std::size_t i = 0; i < g.num_nodes(); ++i) os << (i ? "," : "") << g.nodes()[i];
    os << '\n';
  }
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

Graph read_edge_list(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# nodes=", 0) != 0) {
    throw std::invalid_argument("read_edge_list: missing '# nodes=N' header");
  }
  const auto n = std::stoll(line.substr(8));
  if (n < 0) throw std::invalid_argument("read_edge_list: negative node count");

  std::vector<Label> labels;
  std::vector<Edge> edges;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("# labels=", 0) == 0) {
      std::stringstream ss(line.substr(9));
      std::string tok;
      while (std::getline(ss, tok, ',')) labels.push_back(std::stoll(tok));
      continue;
    }
    if (line[0] == '#') continue;
    std::istringstream ls(line);
    Label u = 0, v = 0;
    if (!(ls >> u >> v)) throw std::invalid_argument("read_edge_list: bad edge line '" + line + "'");
    edges.emplace_back(u, v);
  }
  if (labels.empty()) {
    for (Label i = 1; i <= n; ++i) labels.push_back(i);
  } else if (static_cast<std::int64_t>(labels.size()) != n) {
    throw std::invalid_argument("read_edge_list: label count does not match header");
  }
  Graph g(labels);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

}  // namespace tcs
