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

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "tcs/gaussian_state.hpp"
#include "tcs/graph.hpp"
#include "tcs/nullifier.hpp"
#include "tcs/symplectic.hpp"

namespace tcs {

/// Reference construction: one p-squeezed mode per node, squeezing chosen per
/// node, then one CZ per edge in the given order.
template <typename Scalar>
GaussianState<Scalar> build_canonical_cluster(const Graph& graph,
                                              const std::function<Scalar(Label)>& squeezing,
                                              const std::vector<Edge>& edge_order) {
  const auto n = static_cast<Index>(graph.num_nodes());
  using S = GaussianState<Scalar>;
  typename S::Matrix cov = S::Matrix::Zero(2 * n, 2 * n);
  for (Index k = 0; k < n; ++k) {
    const Scalar r = squeezing(graph.nodes()[static_cast<std::size_t>(k)]);
    if (!(r >= Scalar(0))) throw std::invalid_argument("build_canonical_cluster: negative squeezing");
    cov(k, k) = std::exp(Scalar(2) * r) / Scalar(2);
    cov(n + k, n + k) = std::exp(Scalar(-2) * r) / Scalar(2);
  }
  S state(graph.nodes(), S::Vector::Zero(2 * n), std::move(cov));
  for (const auto& [u, v] : edge_order) {
    if (!graph.has_edge(u, v)) throw std::invalid_argument("build_canonical_cluster: edge not in graph");
    state = apply_cz(std::move(state), u, v);
  }
  return state;
}

template <typename Scalar>
GaussianState<Scalar> build_canonical_cluster(const Graph& graph,
                                              const std::function<Scalar(Label)>& squeezing) {
  return build_canonical_cluster<Scalar>(
      graph, squeezing, std::vector<Edge>(graph.edges().begin(), graph.edges().end()));
}

/// Uniform squeezing r on every node.
template <typename Scalar>
GaussianState<Scalar> build_canonical_cluster(const Graph& graph, Scalar r) {
  if (!(r >= Scalar(0))) throw std::invalid_argument("build_canonical_cluster: negative squeezing");
  return build_canonical_cluster<Scalar>(graph, [r](Label) { return r; });
}

template <typename Scalar>
std::vector<NodeVariance<Scalar>> canonical_nullifier_report(const Graph& graph, Scalar r) {
  return nullifier_variances(build_canonical_cluster<Scalar>(graph, r), graph);
}

}  // namespace tcs
