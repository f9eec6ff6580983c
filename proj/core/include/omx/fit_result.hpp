// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace omx {

enum class ParamUnit { angular, hertz, dimensionless };

struct FitParameter {
  std::string name;
  double value = 0.0;
  double std_error = 0.0;  ///< local-curvature estimate, >= 0
  ParamUnit unit = ParamUnit::dimensionless;
};

struct FitResult {
  std::vector<FitParameter> params;
  double residual_norm = 0.0;  ///< sum of squared residuals
  bool converged = false;
  int n_iter = 0;
  double gradient_norm = 0.0;

  const FitParameter& param(std::string_view name) const;
  double value(std::string_view name) const { return param(name).value; }
  double std_error(std::string_view name) const { return param(name).std_error; }
};

// Angular quantities are written as ordinary Hz (unit "Hz") and converted
// back on read; a round trip reproduces them to within a few ulp.
void to_json(nlohmann::json& j, const FitResult& r);
void from_json(const nlohmann::json& j, FitResult& r);

}  // namespace omx
