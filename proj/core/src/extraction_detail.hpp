// SPDX-License-Identifier: Apache-2.0
#pragma once

// Shared plumbing for the trace fits. Not installed.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "omx/fit/levenberg_marquardt.hpp"
#include "omx/fit_result.hpp"

namespace omx::extract::detail {

/// Internal (unconstrained, O(1)) coordinates to physical parameters.
using ToPhysical = std::function<std::vector<double>(std::span<const double>)>;

/// Residuals as a function of physical parameters.
using PhysicalResidual = std::function<void(const std::vector<double>&, std::span<double>)>;

struct ParamSpec {
  std::string name;
  ParamUnit unit;
};

struct Candidate {
  fit::LmReport report;
  std::vector<double> physical;
};

/// Runs LM from every start and keeps the lowest-SSR finite result. With
/// screen_iterations > 0 every start first gets that many iterations and only
/// the best one is run to convergence.
Candidate best_of(const PhysicalResidual& residual, std::size_t m, const ToPhysical& to_phys,
                  const std::vector<std::vector<double>>& starts, int screen_iterations = 0);

/// Packs a candidate into a FitResult with standard errors propagated from
/// internal to physical coordinates.
FitResult to_result(const Candidate& c, std::size_t m, const ToPhysical& to_phys,
                    const std::vector<ParamSpec>& specs);

double logistic(double u);
double logit(double p);

/// Median absolute deviation of first differences scaled to a Gaussian sigma.
double noise_sigma(std::span<const double> y);

std::vector<double> moving_average(std::span<const double> y, int width);

double median(std::vector<double> v);

fit::LmOptions fit_options();

}  // namespace omx::extract::detail
