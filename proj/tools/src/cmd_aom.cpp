// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <sstream>

#include "omx/aom.hpp"
#include "omx/cli/commands.hpp"
#include "omx/constants.hpp"
#include "omx/bessel.hpp"

namespace omx::cli {

void cmd_aom(const ConfigNode& cfg, const Context& ctx) {
  const auto dev_node = cfg.optional_child("device");
  std::optional<model::DeviceParams> dev;
  if (dev_node) dev = read_device(*dev_node);
  const auto drive = cfg.optional_child("drive");
  const auto spectrum = cfg.optional_child("spectrum");
  const auto from_h = cfg.optional_child("gamma_mu_from_h");
  const auto half_wave = cfg.optional_child("v_pi");
  cfg.finish();
  if (!drive && !spectrum && !from_h && !half_wave) {
    cfg.fail("drive", "nothing to do: give at least one of drive, spectrum, gamma_mu_from_h, v_pi");
  }
  auto need_device = [&](const ConfigNode& n) -> const model::DeviceParams& {
    if (!dev) n.fail("device", "this block needs the device block");
    return *dev;
  };

  nlohmann::json result;
  result["command"] = "aom";
  std::ostringstream s;
  s << "omx aom\n";
  OutputDir out(ctx.out_dir);

  if (drive) {
    const auto& d = need_device(*drive);
    const double f = drive->optional_quantity("frequency", Dimension::frequency)
                         .value_or(ordinary(d.mech.omega_m));
    const double p = drive->quantity("power", Dimension::power);
    drive->finish();
    const auto st = aom::DriveState::from_power(d, angular(f), p);
    result["drive"] = {{"frequency_hz", f}, {"power_w", p}, {"n_phon", st.n_phon}, {"h", st.h}};
    s << "  drive        " << fmt_sig(p) << " W at " << fmt_sig(f / 1e9) << " GHz -> n_phon "
      << fmt_sig(st.n_phon) << ", h " << fmt_sig(st.h) << "\n";
  }

  if (spectrum) {
    const auto& d = need_device(*spectrum);
    const auto grid = read_grid(spectrum->child("detuning"), Dimension::frequency);
    const auto hs = spectrum->number_array("h");
    const double f_mu = spectrum->optional_quantity("frequency", Dimension::frequency)
                            .value_or(ordinary(d.mech.omega_m));
    spectrum->finish();
    if (hs.empty()) spectrum->fail("h", "needs at least one modulation index");
    std::vector<double> delta(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) delta[i] = angular(grid[i]);
    CsvTable t({"detuning_hz", "h", "reflection"});
    nlohmann::json js = nlohmann::json::array();
    for (double h : hs) {
      if (!(h >= 0.0)) spectrum->fail("h", "modulation indices must be >= 0");
      const auto r = aom::reflection_spectrum(d.cavity, h, angular(f_mu), delta);
      double r_min = 1.0;
      for (std::size_t i = 0; i < r.size(); ++i) {
        t.add({fmt(grid[i]), fmt(h), fmt(r[i])});
        r_min = std::min(r_min, r[i]);
      }
      const auto j = special::bessel_j_orders(special::sideband_cutoff(h), h);
      double norm = 0.0;
      for (double v : j) norm += v * v;
      norm = 2.0 * norm - j[0] * j[0];
      js.push_back({{"h", h}, {"min_reflection", r_min}, {"bessel_weight_sum", norm}});
    }
    out.csv("spectrum.csv", t);
    result["spectrum"] = {{"points", grid.size()}, {"frequency_hz", f_mu}, {"curves", js}};
    s << "  spectrum     " << hs.size() << " curve(s) x " << grid.size() << " points\n";
  }

  if (from_h) {
    const auto& d = need_device(*from_h);
    const double h = from_h->number("h");
    const double p = from_h->quantity("power", Dimension::power);
    const double f = from_h->optional_quantity("frequency", Dimension::frequency)
                         .value_or(ordinary(d.mech.omega_m));
    from_h->finish();
    const double gmu = aom::gamma_mu_from_h(h, angular(f), d.mech.gamma, d.g0, p);
    result["gamma_mu_from_h"] = {{"h", h},
                                 {"power_w", p},
                                 {"gamma_mu_hz", ordinary(gmu)},
                                 {"eta_m", gmu / d.mech.gamma}};
    s << "  gamma_mu     " << fmt_sig(ordinary(gmu)) << " Hz (eta_m " << fmt_sig(gmu / d.mech.gamma)
      << ")\n";
  }

  if (half_wave) {
    const double h = half_wave->number("h");
    const double p = half_wave->quantity("power", Dimension::power);
    const double z0 = half_wave->optional_quantity("z0", Dimension::impedance)
                          .value_or(dev ? dev->z0 : 50.0);
    const auto bw = half_wave->optional_quantity("bandwidth", Dimension::frequency);
    half_wave->finish();
    const auto hw = aom::v_pi(h, p, z0);
    result["v_pi"] = {{"h", h}, {"power_w", p}, {"z0_ohm", z0}, {"v_pi_v", hw.v_pi},
                      {"p_pi_w", hw.p_pi}};
    s << "  V_pi         " << fmt_sig(hw.v_pi * 1e3) << " mV (P_pi " << fmt_sig(hw.p_pi) << " W)\n";
    if (bw) {
      result["v_pi"]["bandwidth_hz"] = *bw;
      result["v_pi"]["energy_per_bit_j"] = hw.energy_per_bit(*bw);
      s << "  E_bit        " << fmt_sig(hw.energy_per_bit(*bw)) << " J at " << fmt_sig(*bw)
        << " Hz\n";
    }
  }

  out.json("result.json", result);
  out.text("summary.txt", s.str());
}

}  // namespace omx::cli
