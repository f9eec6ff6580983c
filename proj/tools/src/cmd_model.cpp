// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>
#include <sstream>

#include "omx/cli/commands.hpp"
#include "omx/constants.hpp"
#include "omx/errors.hpp"

namespace omx::cli {

namespace {

using nlohmann::json;

model::PumpState read_pump(const ConfigNode& node, const model::DeviceParams& dev) {
  const std::string side = node.string("side");
  if (side != "blue" && side != "red") node.fail("side", "expected \"blue\" or \"red\"");
  double delta = side == "blue" ? -dev.mech.omega_m : dev.mech.omega_m;
  if (const auto d = node.optional_quantity("detuning", Dimension::frequency)) {
    delta = angular(*d);
    if ((side == "blue") != (delta < 0.0)) {
      node.fail("detuning", "sign does not match side (blue needs a negative detuning)");
    }
  }
  const auto power = node.optional_quantity("power", Dimension::power);
  const auto n_c = node.optional_number("n_c");
  node.finish();
  if (power && n_c) node.fail("n_c", "give either power or n_c, not both");
  if (power) {
    const double omega_p = dev.cavity.omega_c - delta;
    return model::PumpState::from_power(dev, delta, *power, omega_p);
  }
  if (!n_c) node.fail("power", "required field is missing (or give n_c)");
  return model::PumpState::from_photons(dev, delta, *n_c);
}

json complex_json(std::complex<double> z) {
  return {{"re", z.real()}, {"im", z.imag()}, {"mag_sq", std::norm(z)}};
}

}  // namespace

void cmd_model(const ConfigNode& cfg, const Context& ctx) {
  const auto dev = read_device(cfg.child("device"));
  const auto pump = read_pump(cfg.child("pump"), dev);
  const auto sparams = cfg.optional_child("s_parameters");
  const auto sweep = cfg.optional_child("efficiency_sweep");
  const auto three = cfg.optional_child("three_mode");
  const auto qubit = cfg.optional_child("qubit");
  cfg.finish();

  std::vector<double> f_grid;
  if (sparams) f_grid = read_grid(*sparams, Dimension::frequency);

  std::vector<double> n_grid;
  double sweep_eta_e = dev.eta_e();
  double sweep_c0 = dev.c0();
  auto sweep_side = pump.side();
  if (sweep) {
    const std::string sd = sweep->string_or("side", model::to_string(sweep_side));
    if (sd != "blue" && sd != "red") sweep->fail("side", "expected \"blue\" or \"red\"");
    sweep_side = sd == "blue" ? model::PumpSide::blue : model::PumpSide::red;
    sweep_eta_e = sweep->number_or("eta_e", sweep_eta_e);
    sweep_c0 = sweep->number_or("c0", sweep_c0);
    n_grid = read_grid(sweep->child("n_c"), std::nullopt);
    sweep->finish();
    if (!(sweep_eta_e > 0.0)) sweep->fail("eta_e", "must be positive");
    if (!(sweep_c0 > 0.0)) sweep->fail("c0", "must be positive");
    if (!(n_grid.front() >= 0.0)) sweep->fail("n_c", "photon numbers must be >= 0");
  }

  std::optional<model::ThreeModeParams> tm;
  if (three) {
    tm.emplace();
    tm->g_bc = angular(three->quantity("g_bc", Dimension::frequency));
    tm->kappa_c = angular(three->quantity("kappa_c", Dimension::frequency));
    tm->kappa_ce = angular(three->quantity("kappa_ce", Dimension::frequency));
    tm->delta_bc = angular(three->optional_quantity("delta_bc", Dimension::frequency).value_or(0.0));
    three->finish();
  }
  std::optional<double> z_c;
  if (qubit) {
    z_c = qubit->quantity("z_c", Dimension::impedance);
    qubit->finish();
  }

  const auto side = pump.side();
  std::vector<std::string> warnings;
  if (!dev.sideband_resolved()) {
    warnings.push_back("omega_m <= kappa: not sideband resolved, peak-efficiency formulas lose accuracy");
  }

  json result;
  result["command"] = "model";
  result["device"] = {{"c0", dev.c0()},
                      {"eta_o", dev.cavity.eta_o()},
                      {"eta_m", dev.mech.eta_m()},
                      {"eta_e", dev.eta_e()},
                      {"sideband_resolved", dev.sideband_resolved()}};
  json pj = {{"side", model::to_string(side)},
             {"detuning_hz", ordinary(pump.delta)},
             {"n_c", pump.n_c},
             {"g_eff_hz", ordinary(pump.g_eff)},
             {"cooperativity", pump.coop}};
  if (pump.p_in) pj["power_w"] = *pump.p_in;
  result["pump"] = pj;

  // Blue operation at C >= 1 is outside the linear theory; that is a domain error.
  const double eta = model::total_efficiency(dev, pump.coop, side);
  result["efficiency"] = {{"total", eta}};
  if (side == model::PumpSide::blue) {
    const double g = model::internal_gain(pump.coop);
    result["efficiency"]["internal_gain"] = g;
    result["efficiency"]["internal_gain_db"] = 10.0 * std::log10(g);
  }
  if (tm) {
    result["three_mode"] = {{"efficiency", model::three_mode_efficiency(dev, *tm, pump.coop, side)},
                            {"gamma_mu_hz", ordinary(model::gamma_mu_mismatch(*tm))},
                            {"c_bc", tm->c_bc(dev.mech.gamma)}};
  }
  result["qubit"] = {{"energy_per_qubit_j", model::energy_per_qubit(dev)}};
  if (z_c) result["qubit"]["g_mu_hz"] = ordinary(model::qubit_coupling(dev, *z_c));
  result["warnings"] = warnings;

  OutputDir out(ctx.out_dir);
  if (sparams) {
    CsvTable t({"f_hz", "quantity", "re", "im", "mag_sq", "phase_rad"});
    for (double f : f_grid) {
      const double w = angular(f);
      const std::pair<const char*, std::complex<double>> rows[] = {
          {"s_oo", model::s_oo(dev, pump, w)},
          {"s_oe", model::s_oe(dev, pump, w)},
          {"s_eo", model::s_eo(dev, pump, w)}};
      for (const auto& [name, z] : rows) {
        t.add({fmt(f), name, fmt(z.real()), fmt(z.imag()), fmt(std::norm(z)), fmt(std::arg(z))});
      }
    }
    out.csv("s_parameters.csv", t);
    const double w_m = dev.mech.omega_m;
    result["s_parameters"] = {{"points", f_grid.size()},
                              {"at_omega_m",
                               {{"s_oo", complex_json(model::s_oo(dev, pump, w_m))},
                                {"s_oe", complex_json(model::s_oe(dev, pump, w_m))},
                                {"s_eo", complex_json(model::s_eo(dev, pump, w_m))}}}};
  }
  if (sweep) {
    CsvTable t({"n_c", "cooperativity", "eta_total", "lasing"});
    std::size_t lasing = 0;
    for (double n : n_grid) {
      const double c = sweep_c0 * n;
      if (sweep_side == model::PumpSide::blue && c >= 1.0) {
        t.add({fmt(n), fmt(c), "", "1"});
        ++lasing;
        continue;
      }
      const double d = sweep_side == model::PumpSide::blue ? 1.0 - c : 1.0 + c;
      t.add({fmt(n), fmt(c), fmt(sweep_eta_e * 4.0 * c / (d * d)), "0"});
    }
    out.csv("efficiency.csv", t);
    result["efficiency_sweep"] = {{"side", model::to_string(sweep_side)},
                                  {"eta_e", sweep_eta_e},
                                  {"c0", sweep_c0},
                                  {"points", n_grid.size()},
                                  {"lasing_points", lasing}};
  }
  out.json("result.json", result);

  std::ostringstream s;
  s << "omx model\n";
  s << "  C0           " << fmt_sig(dev.c0()) << "\n";
  s << "  eta_e        " << fmt_sig(dev.eta_e()) << "  (eta_oc " << fmt_sig(dev.eta_oc)
    << ", eta_o " << fmt_sig(dev.cavity.eta_o()) << ", eta_m " << fmt_sig(dev.mech.eta_m()) << ")\n";
  s << "  pump         " << model::to_string(side) << ", detuning "
    << fmt_sig(ordinary(pump.delta) / 1e9) << " GHz, n_c " << fmt_sig(pump.n_c) << "\n";
  s << "  C            " << fmt_sig(pump.coop) << "\n";
  s << "  eta_total    " << fmt_sig(eta) << "\n";
  s << "  E_qubit      " << fmt_sig(model::energy_per_qubit(dev)) << " J\n";
  if (tm) s << "  three-mode   " << fmt_sig(result["three_mode"]["efficiency"].get<double>()) << "\n";
  for (const auto& w : warnings) s << "warning: " << w << "\n";
  out.text("summary.txt", s.str());
}

}  // namespace omx::cli
