// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace omx::fit {

/// Fills `residuals` (fixed length) for the parameter vector `params`.
using ResidualFn = std::function<void(std::span<const double> params, std::span<double> residuals)>;

struct LmOptions {
  int max_iterations = 200;
  double step_tolerance = 1e-8;      ///< relative parameter step
  double gradient_tolerance = 1e-10; ///< relative to the starting gradient
  double initial_damping = 1e-3;
};

struct LmReport {
  std::vector<double> params;
  std::vector<double> residuals;
  double ssr = 0.0;  ///< sum of squared residuals
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;          ///< |J^T r| at the solution
  double initial_gradient_norm = 0.0;
  /// (J^T J)^+ at the solution, row-major n x n. Multiply by the residual
  /// variance to get the parameter covariance.
  std::vector<double> inverse_curvature;
};

/// Jacobian by central differences, row-major m x n.
std::vector<double> numeric_jacobian(const ResidualFn& fn, std::size_t n_residuals,
                                     std::span<const double> params);

/// Damped Gauss-Newton with Marquardt diagonal scaling and a central-difference
/// Jacobian. Parameters should be O(1); callers rescale physical quantities.
LmReport levenberg_marquardt(const ResidualFn& fn, std::size_t n_residuals,
                             std::vector<double> start, const LmOptions& options = {});

}  // namespace omx::fit
