// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "omx/cli/commands.hpp"
#include "omx/constants.hpp"

namespace omx::cli {

std::filesystem::path Context::resolve(const std::string& p) const {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : config_dir / path;
}

model::DeviceParams read_device(const ConfigNode& node) {
  model::DeviceParams dev;
  const auto wavelength = node.optional_quantity("wavelength", Dimension::length);
  const auto f_c = node.optional_quantity("f_c", Dimension::frequency);
  if (wavelength && f_c) node.fail("f_c", "give either wavelength or f_c, not both");
  if (wavelength) {
    dev.cavity.omega_c = omega_from_wavelength(*wavelength);
  } else if (f_c) {
    dev.cavity.omega_c = angular(*f_c);
  } else {
    node.fail("wavelength", "required field is missing (or give f_c)");
  }
  dev.cavity.kappa = angular(node.quantity("kappa", Dimension::frequency));
  dev.cavity.kappa_e = angular(node.quantity("kappa_e", Dimension::frequency));
  dev.mech.omega_m = angular(node.quantity("omega_m", Dimension::frequency));
  dev.mech.gamma = angular(node.quantity("gamma", Dimension::frequency));
  dev.mech.gamma_mu = angular(node.quantity("gamma_mu", Dimension::frequency));
  dev.mech.gamma_e = angular(node.optional_quantity("gamma_e", Dimension::frequency).value_or(0.0));
  dev.g0 = angular(node.quantity("g0", Dimension::frequency));
  dev.eta_oc = node.number("eta_oc");
  dev.z0 = node.optional_quantity("z0", Dimension::impedance).value_or(50.0);
  node.finish();
  dev.validate();
  return dev;
}

std::vector<double> read_grid(const ConfigNode& node, std::optional<Dimension> dim) {
  const double start = dim ? node.quantity("start", *dim) : node.number("start");
  const double stop = dim ? node.quantity("stop", *dim) : node.number("stop");
  const long long points = node.integer("points");
  const std::string spacing = node.string_or("spacing", "linear");
  node.finish();
  if (points < 1) node.fail("points", "grid is empty");
  if (points > 10'000'000) node.fail("points", "grid is too large");
  if (spacing != "linear" && spacing != "log") node.fail("spacing", "expected \"linear\" or \"log\"");
  if (points > 1 && !(stop > start)) node.fail("stop", "must be greater than start");
  if (spacing == "log" && !(start > 0.0)) node.fail("start", "log spacing needs a positive start");

  std::vector<double> grid(static_cast<std::size_t>(points));
  const double n = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / n;
    grid[i] = spacing == "log" ? start * std::pow(stop / start, t) : start + (stop - start) * t;
  }
  grid.back() = points == 1 ? start : stop;
  return grid;
}

}  // namespace omx::cli
