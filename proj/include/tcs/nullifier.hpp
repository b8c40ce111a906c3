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

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcs/gaussian_state.hpp"
#include "tcs/graph.hpp"

namespace tcs {

template <typename Scalar>
struct NodeVariance {
  Label node = 0;
  Scalar variance = 0;
};

/// Variance of p_node - sum_{k in neighbors} q_k.
template <typename Scalar>
Scalar nullifier_variance(const GaussianState<Scalar>& state, Label node,
                          const std::set<Label>& neighbors) {
  typename GaussianState<Scalar>::Vector v =
      GaussianState<Scalar>::Vector::Zero(state.mean().size());
  v(state.p_index(node)) = Scalar(1);
  for (Label k : neighbors) v(state.q_index(k)) -= Scalar(1);
  return v.dot(state.cov() * v);
}

/// Per-node nullifier variances for `graph`, in graph node order.
template <typename Scalar>
std::vector<NodeVariance<Scalar>> nullifier_variances(const GaussianState<Scalar>& state,
                                                      const Graph& graph) {
  for (Label n : graph.nodes()) {
    if (!state.contains(n)) {
      throw std::invalid_argument("nullifier_variances: graph node " + std::to_string(n) +
                                  " is not a live mode");
    }
  }
  std::vector<NodeVariance<Scalar>> out;
  out.reserve(graph.num_nodes());
  for (Label n : graph.nodes()) out.push_back({n, nullifier_variance(state, n, graph.neighbors(n))});
  return out;
}

}  // namespace tcs
