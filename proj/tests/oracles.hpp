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

// Test-only reference computations. The cluster covariances come from the
// closed form, never from the CZ kernel.

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "tcs/canonical.hpp"
#include "tcs/gaussian_state.hpp"
#include "tcs/graph.hpp"
#include "tcs/measurement.hpp"
#include "tcs/pipeline.hpp"

namespace tcs::testing {

/// q_out = q_in, p_out = p_in + A q_in on a product of p-squeezed inputs,
/// node k squeezed by r_k.
template <typename SqueezingFn>
Eigen::MatrixXd closed_form_cluster_cov(const Graph& g, SqueezingFn&& squeezing) {
  const Eigen::MatrixXd a = adjacency_matrix<double>(g);
  const auto n = a.rows();
  Eigen::VectorXd big(n), small(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double r = squeezing(g.nodes()[static_cast<std::size_t>(k)]);
    big(k) = std::exp(2 * r) / 2;
    small(k) = std::exp(-2 * r) / 2;
  }
  Eigen::MatrixXd cov(2 * n, 2 * n);
  cov.topLeftCorner(n, n) = big.asDiagonal();
  cov.topRightCorner(n, n) = big.asDiagonal() * a;
  cov.bottomLeftCorner(n, n) = a * big.asDiagonal();
  cov.bottomRightCorner(n, n) = a * big.asDiagonal() * a;
  cov.bottomRightCorner(n, n) += Eigen::MatrixXd(small.asDiagonal());
  return cov;
}

inline Eigen::MatrixXd closed_form_cluster_cov(const Graph& g, double r) {
  return closed_form_cluster_cov(g, [r](Label) { return r; });
}

/// Monte-Carlo regression oracle for homodyne conditioning: samples the joint
/// Gaussian, regresses every surviving quadrature on the measured one, and
/// returns the residual covariance in the post-measurement block ordering.
inline Eigen::MatrixXd sampled_conditional_cov(const GaussianStated& state, Label mode, double theta,
                                               int samples, std::uint64_t seed) {
  const auto n = state.num_modes();
  const auto k = state.index_of(mode);
  Eigen::LLT<Eigen::MatrixXd> llt(state.cov());
  const Eigen::MatrixXd l = llt.matrixL();

  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i)
    if (i != k) keep.push_back(i);
  const auto s = static_cast<Eigen::Index>(keep.size());
  for (Eigen::Index i = 0; i < s; ++i) keep.push_back(n + keep[static_cast<std::size_t>(i)]);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd ys(samples, keep.size());
  Eigen::VectorXd xs(samples);
  Eigen::VectorXd z(2 * n);
  for (int t = 0; t < samples; ++t) {
    for (Eigen::Index i = 0; i < 2 * n; ++i) z(i) = normal(rng);
    const Eigen::VectorXd v = state.mean() + l * z;
    xs(t) = std::cos(theta) * v(k) + std::sin(theta) * v(n + k);
    for (std::size_t j = 0; j < keep.size(); ++j) ys(t, static_cast<Eigen::Index>(j)) = v(keep[j]);
  }
  const double xbar = xs.mean();
  const Eigen::RowVectorXd ybar = ys.colwise().mean();
  const Eigen::VectorXd xc = xs.array() - xbar;
  const Eigen::MatrixXd yc = ys.rowwise() - ybar;
  const Eigen::RowVectorXd beta = (xc.transpose() * yc) / xc.squaredNorm();
  const Eigen::MatrixXd resid = yc - xc * beta;
  return resid.transpose() * resid / double(samples - 2);
}

/// Replays a pipeline history all at once: the closed-form cluster on every
/// emitted pulse and executed CZ, then detections (recorded outcomes) and
/// traces in history order. Valid because CZs commute with each other and
/// with operations on other modes.
inline GaussianStated history_oracle(const PipelineConfig& config,
                                     const std::vector<PipelineEvent>& executed,
                                     const std::vector<MeasurementRecordd>& records) {
  Graph g;
  for (const auto& ev : executed) {
    if (ev.kind == EventKind::emit) g.add_node(ev.a);
    if (ev.kind == EventKind::cz) g.add_edge(ev.a, ev.b);
  }
  const double r = config.squeezing;
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  GaussianStated state(g.nodes(), Eigen::VectorXd::Zero(2 * n),
                       closed_form_cluster_cov(g, [r](Label l) { return l <= 0 ? 0.0 : r; }));
  std::size_t next_record = 0;
  for (const auto& ev : executed) {
    if (ev.kind == EventKind::trace) state = trace_out(state, {ev.a});
    if (ev.kind == EventKind::measure) {
      const auto& rec = records.at(next_record++);
      state = measure_quadrature(state, rec.node, rec.angle, rec.outcome).state;
    }
  }
  return state;
}

}  // namespace tcs::testing
