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

#include <cmath>
#include <concepts>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "tcs/gaussian_state.hpp"
#include "tcs/symplectic.hpp"

namespace tcs {

/// Smallest measured-quadrature variance accepted by the conditioning step.
inline constexpr double kMinMarginalVariance = 1e-12;

/// Outcome of one homodyne detection.
template <typename Scalar>
struct MeasurementRecord {
  Label node = 0;
  Scalar angle = 0;    // in [0, pi); 0 is q, pi/2 is p
  Scalar outcome = 0;  // value of q cos(angle) + p sin(angle)
  // Displacement applied to the survivors (block ordering of the post-state).
  // It cancels the conditional mean shift, so survivor means are unchanged.
  typename GaussianState<Scalar>::Vector feedforward;
};

using MeasurementRecordd = MeasurementRecord<double>;

template <typename Scalar>
struct MeasuredState {
  GaussianState<Scalar> state;
  MeasurementRecord<Scalar> record;
};

namespace detail {

// Folds theta into [0, pi). Returns the folded angle and the sign relating
// the two quadratures: x_theta = sign * x_folded.
template <typename Scalar>
std::pair<Scalar, Scalar> fold_angle(Scalar theta) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar turns = std::floor(theta / pi);
  Scalar folded = theta - turns * pi;
  if (folded >= pi) folded -= pi;
  if (folded < Scalar(0)) folded = Scalar(0);
  const bool odd = std::fmod(std::abs(turns), Scalar(2)) == Scalar(1);
  return {folded, odd ? Scalar(-1) : Scalar(1)};
}

template <typename Scalar, typename OutcomeFn>
MeasuredState<Scalar> measure_impl(const GaussianState<Scalar>& state, Label mode, Scalar theta,
                                   OutcomeFn&& pick_outcome) {
  const auto [angle, sign] = fold_angle(theta);
  // Rotating by the folded angle brings the measured quadrature onto q.
  const auto rotated = apply_phase_rotation(state, mode, angle);
  const Index k = rotated.q_index(mode);
  const Scalar var = rotated.cov()(k, k);
  if (!(var >= Scalar(kMinMarginalVariance))) {
    throw std::domain_error("measure_quadrature: marginal variance of mode " +
                            std::to_string(mode) + " is below threshold");
  }
  const Scalar mu = rotated.mean()(k);
  const Scalar outcome = pick_outcome(mu, var, sign);

  const auto keep = kept_quadratures(rotated, {rotated.index_of(mode)});
  using S = GaussianState<Scalar>;
  const typename S::Vector cross = rotated.cov()(keep, Eigen::seqN(k, 1));
  const typename S::Vector gain = cross / var;

  typename S::Matrix cov = rotated.cov()(keep, keep);
  cov.noalias() -= gain * cross.transpose();
  typename S::Vector mean = rotated.mean()(keep);

  std::vector<Label> labels;
  for (Label l : rotated.labels())
    if (l != mode) labels.push_back(l);

  MeasurementRecord<Scalar> record;
  record.node = mode;
  record.angle = angle;
  record.outcome = outcome;
  record.feedforward = -gain * (outcome - mu);
  // Pinned feedforward: the shift mean + gain * (outcome - mu) is applied and
  // immediately cancelled, so `mean` is left as is.

  S post(std::move(labels), std::move(mean), std::move(cov));
  post.symmetrize();
  return {std::move(post), std::move(record)};
}

}  // namespace detail

/// Homodyne measurement of x = q cos(theta) + p sin(theta) on `mode` with a
/// caller-fixed outcome. The mode is removed and survivors are conditioned.
template <typename Scalar>
MeasuredState<Scalar> measure_quadrature(const GaussianState<Scalar>& state, Label mode,
                                         Scalar theta, Scalar outcome) {
  return detail::measure_impl(state, mode, theta,
                              [&](Scalar, Scalar, Scalar sign) { return sign * outcome; });
}

/// As above, drawing the outcome from the Gaussian marginal.
template <typename Scalar, std::uniform_random_bit_generator Rng>
MeasuredState<Scalar> measure_quadrature(const GaussianState<Scalar>& state, Label mode,
                                         Scalar theta, Rng& rng) {
  return detail::measure_impl(state, mode, theta, [&](Scalar mu, Scalar var, Scalar) {
    std::normal_distribution<double> normal(0.0, 1.0);
    return mu + std::sqrt(var) * static_cast<Scalar>(normal(rng));
  });
}

}  // namespace tcs
