// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "omx/fit/levenberg_marquardt.hpp"

using namespace omx::fit;

TEST(NumericJacobian, MatchesAnalyticDerivatives) {
  const ResidualFn fn = [](std::span<const double> p, std::span<double> r) {
    r[0] = p[0] * p[0] * p[1];
    r[1] = std::sin(p[0]) + std::exp(p[1]);
    r[2] = p[1] / p[0];
  };
  const std::vector<double> p{0.7, -1.3};
  const auto jac = numeric_jacobian(fn, 3, p);
  const double expected[6] = {2 * p[0] * p[1],      p[0] * p[0],
                              std::cos(p[0]),       std::exp(p[1]),
                              -p[1] / (p[0] * p[0]), 1.0 / p[0]};
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(jac[i], expected[i], 1e-8 * (1 + std::abs(expected[i])));
}

TEST(LevenbergMarquardt, LinearProblemSolvedExactly) {
  // y = 2 + 3x sampled without noise.
  const ResidualFn fn = [](std::span<const double> p, std::span<double> r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double x = 0.1 * static_cast<double>(i);
      r[i] = p[0] + p[1] * x - (2.0 + 3.0 * x);
    }
  };
  const auto rep = levenberg_marquardt(fn, 20, {0.0, 0.0});
  EXPECT_TRUE(rep.converged);
  EXPECT_NEAR(rep.params[0], 2.0, 1e-10);
  EXPECT_NEAR(rep.params[1], 3.0, 1e-10);
  EXPECT_LT(rep.ssr, 1e-20);
}

TEST(LevenbergMarquardt, RosenbrockValley) {
  const ResidualFn fn = [](std::span<const double> p, std::span<double> r) {
    r[0] = 10.0 * (p[1] - p[0] * p[0]);
    r[1] = 1.0 - p[0];
  };
  const auto rep = levenberg_marquardt(fn, 2, {-1.2, 1.0});
  EXPECT_TRUE(rep.converged);
  EXPECT_NEAR(rep.params[0], 1.0, 1e-7);
  EXPECT_NEAR(rep.params[1], 1.0, 1e-7);
}

TEST(LevenbergMarquardt, GradientSmallAtConvergence) {
  // Exponential decay with a non-zero residual at the optimum.
  const ResidualFn fn = [](std::span<const double> p, std::span<double> r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double t = 0.25 * static_cast<double>(i);
      const double wiggle = (i % 2 == 0 ? 1e-3 : -1e-3);
      r[i] = p[0] * std::exp(-p[1] * t) - (1.5 * std::exp(-0.8 * t) + wiggle);
    }
  };
  const auto rep = levenberg_marquardt(fn, 30, {1.0, 1.0});
  ASSERT_TRUE(rep.converged);
  EXPECT_LT(rep.gradient_norm, 1e-8 * rep.initial_gradient_norm);

  // Independent central-difference gradient of the objective.
  const double h = 1e-6;
  for (std::size_t k = 0; k < 2; ++k) {
    auto ssr_at = [&](double shift) {
      std::vector<double> p = rep.params;
      p[k] += shift;
      std::vector<double> r(30);
      fn(p, r);
      double s = 0;
      for (double v : r) s += v * v;
      return s;
    };
    const double g = (ssr_at(h) - ssr_at(-h)) / (2 * h);
    EXPECT_LT(std::abs(g), 1e-8 * rep.initial_gradient_norm + 1e-9);
  }
}

TEST(LevenbergMarquardt, InverseCurvatureIsSymmetricPositive) {
  const ResidualFn fn = [](std::span<const double> p, std::span<double> r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double x = static_cast<double>(i);
      r[i] = p[0] + p[1] * x + p[2] * x * x - std::cos(x);
    }
  };
  const auto rep = levenberg_marquardt(fn, 12, {0.0, 0.0, 0.0});
  ASSERT_EQ(rep.inverse_curvature.size(), 9u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_GT(rep.inverse_curvature[i * 3 + i], 0.0);
    for (int j = 0; j < 3; ++j)
      EXPECT_NEAR(rep.inverse_curvature[i * 3 + j], rep.inverse_curvature[j * 3 + i],
                  1e-12 * std::abs(rep.inverse_curvature[i * 3 + i]));
  }
}

TEST(LevenbergMarquardt, StopsAtIterationLimit) {
  const ResidualFn fn = [](std::span<const double> p, std::span<double> r) {
    r[0] = 10.0 * (p[1] - p[0] * p[0]);
    r[1] = 1.0 - p[0];
  };
  LmOptions opt;
  opt.max_iterations = 2;
  const auto rep = levenberg_marquardt(fn, 2, {-1.2, 1.0}, opt);
  EXPECT_LE(rep.iterations, 2);
  EXPECT_FALSE(rep.converged);
}
