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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace tcs {

/// Mode label. Emitted pulses carry their emission index; loop-resident
/// vacuum ancillas carry labels <= 0.
using Label = std::int64_t;
using Index = Eigen::Index;

/// Gaussian state over a labelled register of modes.
///
/// Quadratures use block ordering (q_1..q_n, p_1..p_n) with hbar = 1, so the
/// vacuum has covariance I/2.
template <typename Scalar>
class GaussianState {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  GaussianState() = default;

  GaussianState(std::vector<Label> labels, Vector mean, Matrix cov)
      : labels_(std::move(labels)), mean_(std::move(mean)), cov_(std::move(cov)) {
    const auto n2 = static_cast<Index>(2 * labels_.size());
    if (mean_.size() != n2 || cov_.rows() != n2 || cov_.cols() != n2) {
      throw std::invalid_argument("GaussianState: mean/cov size does not match 2 * mode count");
    }
    std::unordered_set<Label> seen;
    for (Label l : labels_) {
      if (!seen.insert(l).second) {
        throw std::invalid_argument("GaussianState: duplicate label " + std::to_string(l));
      }
    }
  }

  Index num_modes() const { return static_cast<Index>(labels_.size()); }
  bool empty() const { return labels_.empty(); }

  const std::vector<Label>& labels() const { return labels_; }
  const Vector& mean() const { return mean_; }
  const Matrix& cov() const { return cov_; }

  // Raw access for the in-place kernels; callers must keep cov symmetric.
  Vector& mutable_mean() { return mean_; }
  Matrix& mutable_cov() { return cov_; }

  bool contains(Label l) const {
    return std::find(labels_.begin(), labels_.end(), l) != labels_.end();
  }

  Index index_of(Label l) const {
    auto it = std::find(labels_.begin(), labels_.end(), l);
    if (it == labels_.end()) {
      throw std::invalid_argument("unknown mode label " + std::to_string(l));
    }
    return static_cast<Index>(it - labels_.begin());
  }

  Index q_index(Label l) const { return index_of(l); }
  Index p_index(Label l) const { return num_modes() + index_of(l); }

  void symmetrize() { cov_ = (cov_ + cov_.transpose()).eval() * Scalar(0.5); }

 private:
  std::vector<Label> labels_;
  Vector mean_;
  Matrix cov_;
};

using GaussianStated = GaussianState<double>;

/// Squeezing parameter from a decibel figure; the variance ratio to vacuum
/// is 10^(-dB/10).
template <typename Scalar = double>
Scalar squeezing_from_db(Scalar db) {
  return db * std::log(Scalar(10)) / Scalar(20);
}

template <typename Scalar = double>
Scalar db_from_squeezing(Scalar r) {
  return r * Scalar(20) / std::log(Scalar(10));
}

template <typename Scalar>
GaussianState<Scalar> vacuum_state(std::vector<Label> labels) {
  const auto n2 = static_cast<Index>(2 * labels.size());
  using S = GaussianState<Scalar>;
  return S(std::move(labels), S::Vector::Zero(n2), S::Matrix::Identity(n2, n2) * Scalar(0.5));
}

/// Vacuum on n modes labelled first_label, first_label + 1, ...
template <typename Scalar>
GaussianState<Scalar> vacuum_state(Index n, Label first_label = 0) {
  if (n < 0) throw std::invalid_argument("vacuum_state: negative mode count");
  std::vector<Label> labels(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) labels[static_cast<std::size_t>(k)] = first_label + k;
  return vacuum_state<Scalar>(std::move(labels));
}

/// Single-mode vacuum squeezed in p: cov = diag(e^{2r}/2, e^{-2r}/2).
template <typename Scalar>
GaussianState<Scalar> p_squeezed_state(Scalar r, Label label = 0) {
  if (!(r >= Scalar(0))) {
    throw std::invalid_argument("p_squeezed_state: squeezing parameter must be >= 0");
  }
  using S = GaussianState<Scalar>;
  typename S::Matrix cov = S::Matrix::Zero(2, 2);
  cov(0, 0) = std::exp(Scalar(2) * r) / Scalar(2);
  cov(1, 1) = std::exp(Scalar(-2) * r) / Scalar(2);
  return S({label}, S::Vector::Zero(2), std::move(cov));
}

/// Direct sum of two registers; labels of `other` follow those of `state`.
template <typename Scalar>
GaussianState<Scalar> append_modes(const GaussianState<Scalar>& state,
                                   const GaussianState<Scalar>& other) {
  for (Label l : other.labels()) {
    if (state.contains(l)) {
      throw std::invalid_argument("append_modes: duplicate label " + std::to_string(l));
    }
  }
  const Index a = state.num_modes();
  const Index b = other.num_modes();
  const Index n = a + b;
  using S = GaussianState<Scalar>;

  std::vector<Label> labels = state.labels();
  labels.insert(labels.end(), other.labels().begin(), other.labels().end());

  // Position of each source quadrature in the combined block ordering.
  auto map_a = [&](Index i) { return i < a ? i : n + (i - a); };
  auto map_b = [&](Index i) { return i < b ? a + i : n + a + (i - b); };

  typename S::Vector mean = S::Vector::Zero(2 * n);
  typename S::Matrix cov = S::Matrix::Zero(2 * n, 2 * n);
  for (Index i = 0; i < 2 * a; ++i) {
    mean(map_a(i)) = state.mean()(i);
    for (Index j = 0; j < 2 * a; ++j) cov(map_a(i), map_a(j)) = state.cov()(i, j);
  }
  for (Index i = 0; i < 2 * b; ++i) {
    mean(map_b(i)) = other.mean()(i);
    for (Index j = 0; j < 2 * b; ++j) cov(map_b(i), map_b(j)) = other.cov()(i, j);
  }
  return S(std::move(labels), std::move(mean), std::move(cov));
}

namespace detail {

// Quadrature indices (block ordering) that survive after dropping `drop`.
template <typename Scalar>
std::vector<Index> kept_quadratures(const GaussianState<Scalar>& state,
                                    const std::vector<Index>& drop_modes) {
  const Index n = state.num_modes();
  std::vector<bool> dropped(static_cast<std::size_t>(n), false);
  for (Index k : drop_modes) dropped[static_cast<std::size_t>(k)] = true;
  std::vector<Index> keep;
  for (Index k = 0; k < n; ++k)
    if (!dropped[static_cast<std::size_t>(k)]) keep.push_back(k);
  const auto kept = static_cast<Index>(keep.size());
  for (Index i = 0; i < kept; ++i) keep.push_back(n + keep[static_cast<std::size_t>(i)]);
  return keep;
}

}  // namespace detail

/// Partial trace: drops rows/columns of the listed modes.
template <typename Scalar>
GaussianState<Scalar> trace_out(const GaussianState<Scalar>& state,
                                const std::vector<Label>& modes) {
  std::vector<Index> drop;
  for (Label l : modes) drop.push_back(state.index_of(l));
  const auto keep = detail::kept_quadratures(state, drop);

  std::vector<Label> labels;
  for (Index k = 0; k < state.num_modes(); ++k) {
    if (std::find(drop.begin(), drop.end(), k) == drop.end())
      labels.push_back(state.labels()[static_cast<std::size_t>(k)]);
  }
  using S = GaussianState<Scalar>;
  typename S::Vector mean = state.mean()(keep);
  typename S::Matrix cov = state.cov()(keep, keep);
  return S(std::move(labels), std::move(mean), std::move(cov));
}

template <typename Scalar>
GaussianState<Scalar> apply_displacement(GaussianState<Scalar> state,
                                         const typename GaussianState<Scalar>::Vector& d) {
  if (d.size() != state.mean().size()) {
    throw std::invalid_argument("apply_displacement: length mismatch");
  }
  state.mutable_mean() += d;
  return state;
}

/// Reorders `state` to follow `order`, which must be a permutation of its labels.
template <typename Scalar>
GaussianState<Scalar> permute_modes(const GaussianState<Scalar>& state,
                                    const std::vector<Label>& order) {
  if (static_cast<Index>(order.size()) != state.num_modes()) {
    throw std::invalid_argument("permute_modes: order is not a permutation of the labels");
  }
  const Index n = state.num_modes();
  std::vector<Index> idx(static_cast<std::size_t>(2 * n));
  for (Index k = 0; k < n; ++k) {
    const Index src = state.index_of(order[static_cast<std::size_t>(k)]);
    idx[static_cast<std::size_t>(k)] = src;
    idx[static_cast<std::size_t>(n + k)] = n + src;
  }
  using S = GaussianState<Scalar>;
  typename S::Vector mean = state.mean()(idx);
  typename S::Matrix cov = state.cov()(idx, idx);
  return S(order, std::move(mean), std::move(cov));
}

template <typename Scalar>
struct Discrepancy {
  Scalar mean = 0;
  Scalar cov = 0;
};

/// Max entrywise differences after mapping labels of `a` onto labels of `b`.
/// The bijection must cover both label sets exactly.
template <typename Scalar>
Discrepancy<Scalar> max_discrepancy(const GaussianState<Scalar>& a,
                                    const GaussianState<Scalar>& b,
                                    const std::map<Label, Label>& bijection) {
  if (a.num_modes() != b.num_modes() ||
      static_cast<Index>(bijection.size()) != a.num_modes()) {
    throw std::invalid_argument("label bijection does not cover both states");
  }
  std::vector<Label> order;
  std::unordered_set<Label> image;
  for (Label l : a.labels()) {
    auto it = bijection.find(l);
    if (it == bijection.end() || !b.contains(it->second) || !image.insert(it->second).second) {
      throw std::invalid_argument("label bijection does not cover both states");
    }
    order.push_back(it->second);
  }
  const auto bp = permute_modes(b, order);
  Discrepancy<Scalar> d;
  if (a.num_modes() == 0) return d;
  d.mean = (a.mean() - bp.mean()).cwiseAbs().maxCoeff();
  d.cov = (a.cov() - bp.cov()).cwiseAbs().maxCoeff();
  return d;
}

/// Same-label comparison.
template <typename Scalar>
Discrepancy<Scalar> max_discrepancy(const GaussianState<Scalar>& a,
                                    const GaussianState<Scalar>& b) {
  std::map<Label, Label> identity;
  for (Label l : a.labels()) identity.emplace(l, l);
  return max_discrepancy(a, b, identity);
}

template <typename Scalar>
bool states_equal(const GaussianState<Scalar>& a, const GaussianState<Scalar>& b,
                  const std::map<Label, Label>& bijection, Scalar tol) {
  const auto d = max_discrepancy(a, b, bijection);
  return d.mean <= tol && d.cov <= tol;
}

}  // namespace tcs
