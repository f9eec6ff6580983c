// SPDX-License-Identifier: Apache-2.0
#include <sstream>

#include "omx/calibration.hpp"
#include "omx/cli/commands.hpp"
#include "omx/constants.hpp"

namespace omx::cli {

namespace {

using nlohmann::json;

Trace load(const ConfigNode& node, const std::string& key, const Context& ctx) {
  const auto path = ctx.resolve(node.string(key));
  if (!std::filesystem::exists(path)) node.fail(key, "file not found: " + path.string());
  try {
    return read_csv(path);
  } catch (const std::invalid_argument& e) {
    node.fail(key, path.string() + ": " + e.what());
  }
}

}  // namespace

void cmd_calibrate(const ConfigNode& cfg, const Context& ctx) {
  const auto chain_node = cfg.child("chain");
  calib::ChainParams chain;
  chain.eta_cable = chain_node.number("eta_cable");
  chain.eta_out = chain_node.number("eta_out");
  chain.z0 = chain_node.optional_quantity("z0", Dimension::impedance).value_or(50.0);
  chain_node.finish();

  const double omega_c = omega_from_wavelength(cfg.quantity("wavelength", Dimension::length));
  const double f_mu = cfg.quantity("microwave_frequency", Dimension::frequency);
  const double omega_mu = angular(f_mu);
  const auto oe = cfg.optional_child("oe");
  const auto eo = cfg.optional_child("eo");
  cfg.finish();
  if (!oe && !eo) cfg.fail("oe", "nothing to do: give oe and/or eo");
  chain.validate();

  // Read everything before computing anything.
  struct OeInputs {
    double p_vna, p_cal_mu, p_cal_o, p_out_mu;
  };
  std::optional<OeInputs> oe_in;
  if (oe) {
    oe_in = OeInputs{oe->quantity("p_vna", Dimension::power),
                     oe->quantity("p_cal_mu", Dimension::power),
                     oe->quantity("p_cal_o", Dimension::power),
                     oe->quantity("p_out_mu", Dimension::power)};
    oe->finish();
  }

  struct EoInputs {
    double p_pump_in = 0.0;
    std::optional<double> ratio;
    std::optional<Trace> scan;
    std::optional<double> s21_sq, p_eom_mu;
    std::optional<Trace> psd, background;
    double psd_bw = 0.0;
    std::optional<double> pump_fraction;
  };
  std::optional<EoInputs> eo_in;
  if (eo) {
    EoInputs in;
    in.p_pump_in = eo->quantity("p_pump_in", Dimension::power);
    in.ratio = eo->optional_number("sideband_ratio");
    if (eo->has("filter_scan")) in.scan = load(*eo, "filter_scan", ctx);
    if (in.ratio.has_value() == in.scan.has_value()) {
      eo->fail("sideband_ratio", "give exactly one of sideband_ratio or filter_scan");
    }
    in.s21_sq = eo->optional_number("s21_sq");
    in.p_eom_mu = eo->optional_quantity("p_eom_mu", Dimension::power);
    if (in.s21_sq.has_value() != in.p_eom_mu.has_value()) {
      eo->fail(in.s21_sq ? "p_eom_mu" : "s21_sq", "s21_sq and p_eom_mu go together");
    }
    if (const auto pn = eo->optional_child("psd")) {
      in.psd = load(*pn, "trace", ctx);
      in.psd_bw = pn->quantity("bandwidth", Dimension::frequency);
      if (pn->has("background")) in.background = load(*pn, "background", ctx);
      pn->finish();
    }
    if (in.s21_sq.has_value() == in.psd.has_value()) {
      eo->fail("s21_sq", "give exactly one microwave readout: s21_sq with p_eom_mu, or psd");
    }
    in.pump_fraction = eo->optional_number("pump_power_fraction");
    if (in.pump_fraction && !(*in.pump_fraction > 0.0 && *in.pump_fraction <= 1.0)) {
      eo->fail("pump_power_fraction", "must lie in (0, 1]");
    }
    eo->finish();
    eo_in = std::move(in);
  }

  json result;
  result["command"] = "calibrate";
  result["chain"] = {{"eta_cable", chain.eta_cable}, {"eta_out", chain.eta_out},
                     {"z0_ohm", chain.z0}};
  result["omega_c_hz"] = ordinary(omega_c);
  result["microwave_frequency_hz"] = f_mu;
  std::ostringstream s;
  s << "omx calibrate\n";

  if (oe_in) {
    const double flux_in = calib::microwave_input_flux(oe_in->p_vna, omega_mu, chain);
    const auto gain = calib::detection_gain(oe_in->p_cal_mu, oe_in->p_cal_o, chain.eta_out);
    const double flux_out = calib::optical_output_flux(oe_in->p_out_mu, gain, omega_c);
    const double eta = calib::oe_efficiency(oe_in->p_out_mu, gain, omega_c, flux_in);
    result["oe"] = {{"p_vna_w", oe_in->p_vna},
                    {"p_cal_mu_w", oe_in->p_cal_mu},
                    {"p_cal_o_w", oe_in->p_cal_o},
                    {"p_out_mu_w", oe_in->p_out_mu},
                    {"detection_gain", gain.gain},
                    {"microwave_input_flux", flux_in},
                    {"optical_output_flux", flux_out},
                    {"efficiency", eta}};
    s << "  microwave-to-optical\n";
    s << "    input flux    " << fmt_sig(flux_in) << " /s\n";
    s << "    gain G        " << fmt_sig(gain.gain) << "\n";
    s << "    output flux   " << fmt_sig(flux_out) << " /s\n";
    s << "    eta_oe        " << fmt_sig(eta) << "\n";
  }

  if (eo_in) {
    json je;
    double r = 0.0;
    if (eo_in->scan) {
      const auto sr = calib::sideband_ratio(*eo_in->scan);
      r = sr.ratio;
      je["filter_scan"] = {{"ratio", sr.ratio},
                           {"dark_v", sr.dark},
                           {"pump_peak_v", sr.pump_peak},
                           {"pump_setpoint_v", sr.pump_x},
                           {"sideband_peak_v", sr.sideband_peak},
                           {"sideband_setpoint_v", sr.sideband_x},
                           {"sideband_ratios", sr.sideband_ratios}};
    } else {
      r = *eo_in->ratio;
    }
    const double flux_in = calib::optical_input_flux(eo_in->p_pump_in, r, omega_c);
    double s21_sq = 0.0, p_eom = 0.0;
    if (eo_in->psd) {
      // The integrated PSD is the microwave power at the analyzer, i.e. p_eom |S21|^2.
      double p = calib::integrate_psd(*eo_in->psd, f_mu, eo_in->psd_bw);
      je["psd"] = {{"integrated_w", p}, {"bandwidth_hz", eo_in->psd_bw}};
      if (eo_in->background) {
        const double b = calib::integrate_psd(*eo_in->background, f_mu, eo_in->psd_bw);
        je["psd"]["background_w"] = b;
        p -= b;
      }
      je["psd"]["signal_w"] = p;
      s21_sq = 1.0;
      p_eom = p;
    } else {
      s21_sq = *eo_in->s21_sq;
      p_eom = *eo_in->p_eom_mu;
      je["s21_sq"] = s21_sq;
      je["p_eom_mu_w"] = p_eom;
    }
    const double flux_out = calib::microwave_output_flux(s21_sq, p_eom, chain, omega_mu);
    const double eta =
        calib::eo_efficiency(s21_sq, p_eom, chain, r, eo_in->p_pump_in, omega_c, omega_mu);
    je["p_pump_in_w"] = eo_in->p_pump_in;
    je["sideband_ratio"] = r;
    je["optical_input_flux"] = flux_in;
    je["microwave_output_flux"] = flux_out;
    je["efficiency"] = eta;
    if (eo_in->pump_fraction) {
      je["pump_power_fraction"] = *eo_in->pump_fraction;
      je["p_pump_modulated_w"] = eo_in->p_pump_in * *eo_in->pump_fraction;
    }
    result["eo"] = je;
    s << "  optical-to-microwave\n";
    s << "    sideband r    " << fmt_sig(r) << "\n";
    s << "    input flux    " << fmt_sig(flux_in) << " /s\n";
    s << "    output flux   " << fmt_sig(flux_out) << " /s\n";
    s << "    eta_eo        " << fmt_sig(eta) << "\n";
  }

  OutputDir out(ctx.out_dir);
  out.json("result.json", result);
  out.text("summary.txt", s.str());
}

}  // namespace omx::cli
