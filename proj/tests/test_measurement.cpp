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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tcs/measurement.hpp"
#include "tcs/physicality.hpp"

using namespace tcs;

TEST_SUITE("measurement") {
  TEST_CASE("q on single vacuum with forced outcome") {
    const auto m = measure_quadrature(vacuum_state<double>(1), 0, 0.0, 0.0);
    CHECK(m.state.empty());
    CHECK(m.record.node == 0);
    CHECK(m.record.outcome == 0.0);
    CHECK(m.record.angle == 0.0);
    CHECK(m.record.feedforward.size() == 0);
  }

  TEST_CASE("conditioning cz(vac, vac) on q_b by hand") {
    // Joint of (q_a, p_a, q_b) from the cz(vac, vac) covariance:
    // var(q_b) = 1/2, cov(p_a, q_b) = 1/2, cov(q_a, q_b) = 0.
    // var(p_a | q_b) = 1 - (1/2)^2 / (1/2) = 1/2; E[p_a | q_b = m] = m.
    const auto s = apply_cz(vacuum_state<double>(2), 0, 1);
    for (double m : {0.0, 1.3, -2.5}) {
      const auto res = measure_quadrature(s, 1, 0.0, m);
      CHECK(res.state.labels() == std::vector<Label>{0});
      CHECK(std::abs(res.state.cov()(0, 0) - 0.5) < 1e-12);
      CHECK(std::abs(res.state.cov()(1, 1) - 0.5) < 1e-12);
      CHECK(std::abs(res.state.cov()(0, 1)) < 1e-12);
      CHECK(res.state.mean().cwiseAbs().maxCoeff() == 0.0);
      // Feedforward cancels the shift: -0 on q_a, -m on p_a.
      CHECK(std::abs(res.record.feedforward(0)) < 1e-12);
      CHECK(std::abs(res.record.feedforward(1) + m) < 1e-12);
    }
  }

  TEST_CASE("conditional covariance does not depend on the outcome") {
    auto s = append_modes(p_squeezed_state(0.6, 1), p_squeezed_state(0.6, 2));
    s = append_modes(s, p_squeezed_state(0.6, 3));
    s = apply_cz(apply_cz(std::move(s), 1, 2), 2, 3);
    const auto ref = measure_quadrature(s, 2, 0.4, 0.0).state;
    for (double m : {-3.0, -0.1, 0.7, 5.0}) {
      CHECK(max_discrepancy(measure_quadrature(s, 2, 0.4, m).state, ref).cov < 1e-12);
    }
  }

  TEST_CASE("angle folding") {
    const auto s = apply_cz(append_modes(p_squeezed_state(0.3, 0), p_squeezed_state(0.3, 1)), 0, 1);
    const double theta = 0.8;
    const auto a = measure_quadrature(s, 0, theta, 0.9);
    const auto b = measure_quadrature(s, 0, theta + std::numbers::pi, -0.9);
    const auto c = measure_quadrature(s, 0, theta - 3 * std::numbers::pi, -0.9);
    CHECK(std::abs(a.record.angle - theta) < 1e-12);
    CHECK(std::abs(b.record.angle - theta) < 1e-12);
    CHECK(std::abs(b.record.outcome - 0.9) < 1e-12);
    CHECK(std::abs(c.record.outcome - 0.9) < 1e-12);
    CHECK((a.record.feedforward - b.record.feedforward).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(max_discrepancy(a.state, b.state).cov < 1e-12);
  }

  TEST_CASE("sampled p outcomes on a squeezed state") {
    const double r = 1.0;
    const auto s = p_squeezed_state(r);
    std::mt19937_64 rng(2024);
    const int n = 1000000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i) {
      const double x = measure_quadrature(s, 0, std::numbers::pi / 2, rng).record.outcome;
      sum += x;
      sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    const double expect = std::exp(-2 * r) / 2;
    CHECK(std::abs(var - expect) / expect < 0.01);
  }

  TEST_CASE("seeded sampling is deterministic") {
    const auto s = apply_cz(vacuum_state<double>(2), 0, 1);
    std::mt19937_64 a(9), b(9);
    for (int i = 0; i < 5; ++i) {
      CHECK(measure_quadrature(s, 1, 0.3, a).record.outcome ==
            measure_quadrature(s, 1, 0.3, b).record.outcome);
    }
  }

  TEST_CASE("conditioning preserves physicality") {
    auto s = append_modes(p_squeezed_state(1.1, 0), p_squeezed_state(0.2, 1));
    s = append_modes(s, vacuum_state<double>(std::vector<Label>{2}));
    s = apply_cz(apply_cz(std::move(s), 0, 1), 1, 2);
    for (double th : {0.0, 0.5, 1.2, 2.9}) {
      CHECK(min_symplectic_eigenvalue(measure_quadrature(s, 1, th, 0.3).state) >= 0.5 - 1e-9);
    }
  }

  TEST_CASE("errors") {
    const auto s = vacuum_state<double>(1);
    CHECK_THROWS_AS(measure_quadrature(s, 3, 0.0, 0.0), std::invalid_argument);
    GaussianStated degenerate({0}, Eigen::VectorXd::Zero(2), Eigen::Vector2d(0.0, 1.0).asDiagonal());
    CHECK_THROWS_AS(measure_quadrature(degenerate, 0, 0.0, 0.0), std::domain_error);
  }

  TEST_CASE("Monte-Carlo regression oracle on a 3-mode wire") {
    auto s = append_modes(p_squeezed_state(0.5, 1), p_squeezed_state(0.5, 2));
    s = append_modes(s, p_squeezed_state(0.5, 3));
    s = apply_cz(apply_cz(std::move(s), 1, 2), 2, 3);
    const double theta = std::numbers::pi / 3;
    const Eigen::MatrixXd sampled = testing::sampled_conditional_cov(s, 2, theta, 200000, 77);
    const Eigen::MatrixXd exact = measure_quadrature(s, 2, theta, 0.0).state.cov();
    const Eigen::VectorXd d = exact.diagonal().cwiseSqrt();
    const Eigen::MatrixXd scale = d * d.transpose();
    CHECK(((sampled - exact).cwiseAbs().array() / scale.array()).maxCoeff() < 0.02);
  }
}
