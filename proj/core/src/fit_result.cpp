// SPDX-License-Identifier: Apache-2.0
#include "omx/fit_result.hpp"

#include <stdexcept>

#include "omx/constants.hpp"

namespace omx {

const FitParameter& FitResult::param(std::string_view name) const {
  for (const auto& p : params) {
    if (p.name == name) return p;
  }
  throw std::out_of_range("fit result has no parameter '" + std::string(name) + "'");
}

void to_json(nlohmann::json& j, const FitResult& r) {
  auto list = nlohmann::json::array();
  for (const auto& p : r.params) {
    nlohmann::json e;
    e["name"] = p.name;
    switch (p.unit) {
      case ParamUnit::angular:
        e["value"] = ordinary(p.value);
        e["std_error"] = ordinary(p.std_error);
        e["unit"] = "Hz";
        e["internal"] = "rad/s";
        break;
      case ParamUnit::hertz:
        e["value"] = p.value;
        e["std_error"] = p.std_error;
        e["unit"] = "Hz";
        break;
      case ParamUnit::dimensionless:
        e["value"] = p.value;
        e["std_error"] = p.std_error;
        e["unit"] = "1";
        break;
    }
    list.push_back(std::move(e));
  }
  j = nlohmann::json{{"params", std::move(list)},
                     {"residual_norm", r.residual_norm},
                     {"converged", r.converged},
                     {"n_iter", r.n_iter},
                     {"gradient_norm", r.gradient_norm}};
}

void from_json(const nlohmann::json& j, FitResult& r) {
  r = FitResult{};
  for (const auto& e : j.at("params")) {
    FitParameter p;
    p.name = e.at("name").get<std::string>();
    const auto unit = e.at("unit").get<std::string>();
    const bool is_angular = e.contains("internal") && e.at("internal").get<std::string>() == "rad/s";
    p.value = e.at("value").get<double>();
    p.std_error = e.at("std_error").get<double>();
    if (is_angular) {
      p.unit = ParamUnit::angular;
      p.value = omx::angular(p.value);
      p.std_error = omx::angular(p.std_error);
    } else if (unit == "Hz") {
      p.unit = ParamUnit::hertz;
    } else if (unit == "1") {
      p.unit = ParamUnit::dimensionless;
    } else {
      throw std::invalid_argument("fit parameter '" + p.name + "' has unknown unit '" + unit + "'");
    }
    r.params.push_back(std::move(p));
  }
  r.residual_norm = j.at("residual_norm").get<double>();
  r.converged = j.at("converged").get<bool>();
  r.n_iter = j.at("n_iter").get<int>();
  r.gradient_norm = j.at("gradient_norm").get<double>();
}

}  // namespace omx
