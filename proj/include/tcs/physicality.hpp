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
#include <complex>
#include <limits>
#include <stdexcept>

#include "tcs/gaussian_state.hpp"
#include "tcs/symplectic.hpp"

namespace tcs {

/// Physical states have every symplectic eigenvalue >= 1/2 (vacuum level).
inline constexpr double kVacuumVariance = 0.5;
inline constexpr double kPhysicalityTolerance = 1e-9;

template <typename Scalar>
bool is_symmetric(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
                  Scalar tol = Scalar(1e-12)) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const Scalar scale = std::max(Scalar(1), m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

/// Moduli of the eigenvalues of i Omega cov, ascending. Each symplectic
/// eigenvalue appears twice.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> symplectic_spectrum(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& cov) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (!is_symmetric<Scalar>(cov)) {
    throw std::invalid_argument("symplectic_spectrum: covariance is not symmetric");
  }
  const Index n = cov.rows() / 2;
  const Matrix omega = symplectic_form<Scalar>(n);

  Vector moduli;
  Eigen::LLT<Matrix> llt(cov);
  if (llt.info() == Eigen::Success) {
    // With cov = L L^T, i Omega cov is similar to the Hermitian L^T (i Omega) L.
    const Matrix l = llt.matrixL();
    const Matrix antisym = l.transpose() * omega * l;
    using Complex = std::complex<Scalar>;
    const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> herm =
        antisym.template cast<Complex>() * Complex(0, 1);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>> es(
        herm, Eigen::EigenvaluesOnly);
    moduli = es.eigenvalues().cwiseAbs();
  } else {
    // Not positive definite: already unphysical, fall back to the general solver.
    Eigen::EigenSolver<Matrix> es(omega * cov, false);
    moduli = es.eigenvalues().cwiseAbs();
  }
  std::sort(moduli.data(), moduli.data() + moduli.size());
  return moduli;
}

/// Minimum symplectic eigenvalue; +inf for the empty register.
template <typename Scalar>
Scalar min_symplectic_eigenvalue(const GaussianState<Scalar>& state) {
  if (state.empty()) return std::numeric_limits<Scalar>::infinity();
  return symplectic_spectrum<Scalar>(state.cov()).minCoeff();
}

template <typename Scalar>
bool is_physical(const GaussianState<Scalar>& state, Scalar tol = Scalar(kPhysicalityTolerance)) {
  return min_symplectic_eigenvalue(state) >= Scalar(kVacuumVariance) - tol;
}

}  // namespace tcs
