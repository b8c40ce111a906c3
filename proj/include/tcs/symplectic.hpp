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
#include <optional>
#include <stdexcept>

#include "tcs/gaussian_state.hpp"

namespace tcs {

/// Omega = [[0, I], [-I, 0]] in block ordering.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> symplectic_form(Index n) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> omega =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n).setIdentity();
  omega.bottomLeftCorner(n, n) = -Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Identity(n, n);
  return omega;
}

/// Affine quadrature map x -> S x + d over a whole register.
template <typename Scalar>
struct SymplecticOp {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix matrix;
  std::optional<Vector> displacement;

  Index num_modes() const { return matrix.rows() / 2; }
};

using SymplecticOpd = SymplecticOp<double>;

/// max |S^T Omega S - Omega|.
template <typename Scalar>
Scalar symplectic_defect(const SymplecticOp<Scalar>& op) {
  const auto omega = symplectic_form<Scalar>(op.num_modes());
  if (omega.size() == 0) return Scalar(0);
  return (op.matrix.transpose() * omega * op.matrix - omega).cwiseAbs().maxCoeff();
}

/// CZ between register positions a and b: p_a += q_b, p_b += q_a.
template <typename Scalar>
SymplecticOp<Scalar> cz_op(Index n, Index a, Index b) {
  if (a == b) throw std::invalid_argument("cz_op: modes must differ");
  SymplecticOp<Scalar> op{SymplecticOp<Scalar>::Matrix::Identity(2 * n, 2 * n), std::nullopt};
  op.matrix(n + a, b) = Scalar(1);
  op.matrix(n + b, a) = Scalar(1);
  return op;
}

/// Phase rotation of one mode: q -> q cos t + p sin t, p -> -q sin t + p cos t.
template <typename Scalar>
SymplecticOp<Scalar> rotation_op(Index n, Index mode, Scalar theta) {
  SymplecticOp<Scalar> op{SymplecticOp<Scalar>::Matrix::Identity(2 * n, 2 * n), std::nullopt};
  const Scalar c = std::cos(theta), s = std::sin(theta);
  op.matrix(mode, mode) = c;
  op.matrix(mode, n + mode) = s;
  op.matrix(n + mode, mode) = -s;
  op.matrix(n + mode, n + mode) = c;
  return op;
}

/// p-squeezer: q -> e^r q, p -> e^{-r} p.
template <typename Scalar>
SymplecticOp<Scalar> squeeze_op(Index n, Index mode, Scalar r) {
  SymplecticOp<Scalar> op{SymplecticOp<Scalar>::Matrix::Identity(2 * n, 2 * n), std::nullopt};
  op.matrix(mode, mode) = std::exp(r);
  op.matrix(n + mode, n + mode) = std::exp(-r);
  return op;
}

template <typename Scalar>
GaussianState<Scalar> apply_symplectic(GaussianState<Scalar> state, const SymplecticOp<Scalar>& op) {
  if (op.matrix.rows() != state.mean().size() || op.matrix.cols() != state.mean().size()) {
    throw std::invalid_argument("apply_symplectic: operator size does not match register");
  }
  state.mutable_mean() = op.matrix * state.mean();
  if (op.displacement) state.mutable_mean() += *op.displacement;
  state.mutable_cov() = op.matrix * state.cov() * op.matrix.transpose();
  state.symmetrize();
  return state;
}

/// Unit-weight CZ by label. Same map as cz_op, applied as row/column updates.
template <typename Scalar>
GaussianState<Scalar> apply_cz(GaussianState<Scalar> state, Label a, Label b) {
  if (a == b) throw std::invalid_argument("apply_cz: modes must differ");
  const Index qa = state.q_index(a), qb = state.q_index(b);
  const Index pa = state.p_index(a), pb = state.p_index(b);
  auto& cov = state.mutable_cov();
  auto& mean = state.mutable_mean();

  // x' = S x with S = I + e_pa e_qb^T + e_pb e_qa^T. Rows first, then columns.
  mean(pa) += mean(qb);
  mean(pb) += mean(qa);
  cov.row(pa) += cov.row(qb);
  cov.row(pb) += cov.row(qa);
  cov.col(pa) += cov.col(qb);
  cov.col(pb) += cov.col(qa);
  state.symmetrize();
  return state;
}

template <typename Scalar>
GaussianState<Scalar> apply_phase_rotation(GaussianState<Scalar> state, Label mode, Scalar theta) {
  const Index q = state.q_index(mode), p = state.p_index(mode);
  const Scalar c = std::cos(theta), s = std::sin(theta);
  auto& cov = state.mutable_cov();
  auto& mean = state.mutable_mean();

  const Scalar mq = mean(q), mp = mean(p);
  mean(q) = c * mq + s * mp;
  mean(p) = -s * mq + c * mp;

  const typename GaussianState<Scalar>::Vector rq = cov.row(q).transpose();
  const typename GaussianState<Scalar>::Vector rp = cov.row(p).transpose();
  cov.row(q) = (c * rq + s * rp).transpose();
  cov.row(p) = (-s * rq + c * rp).transpose();
  const typename GaussianState<Scalar>::Vector cq = cov.col(q);
  const typename GaussianState<Scalar>::Vector cp = cov.col(p);
  cov.col(q) = c * cq + s * cp;
  cov.col(p) = -s * cq + c * cp;
  state.symmetrize();
  return state;
}

}  // namespace tcs
