// SPDX-License-Identifier: Apache-2.0
#pragma once

// Measurement-chain arithmetic: instrument powers to photon fluxes and
// end-to-end conversion efficiencies in both directions.

#include <vector>

#include "omx/trace.hpp"

namespace omx::calib {

struct ChainParams {
  double eta_cable = 1.0;  ///< microwave cable transmission
  double eta_out = 1.0;    ///< lensed fiber to power meter transmission
  double z0 = 50.0;

  void validate() const;
};

/// Optical power at the lensed-fiber output to microwave power at the
/// spectrum analyzer, W/W.
struct DetectionGain {
  double gain = 1.0;
};

/// eta_cable p_vna / (hbar omega_mu), photons/s.
double microwave_input_flux(double p_vna, double omega_mu, const ChainParams& chain);

/// p_cal_mu / (p_cal_o / eta_out).
DetectionGain detection_gain(double p_cal_mu, double p_cal_o, double eta_out);

/// Converted optical flux p_out_mu / (G hbar omega_c), photons/s.
double optical_output_flux(double p_out_mu, DetectionGain gain, double omega_c);

/// Microwave-to-optical efficiency: optical output flux over microwave input flux.
double oe_efficiency(double p_out_mu, DetectionGain gain, double omega_c, double flux_in_mu);

/// Microwave output flux p_eom |S21|^2 / (eta_cable hbar omega_mu).
double microwave_output_flux(double s21_sq, double p_eom_mu, const ChainParams& chain,
                             double omega_mu);

/// Optical sideband input flux p_pump r / (hbar omega_c).
double optical_input_flux(double p_pump_in, double r, double omega_c);

/// Optical-to-microwave efficiency.
double eo_efficiency(double s21_sq, double p_eom_mu, const ChainParams& chain, double r,
                     double p_pump_in, double omega_c, double omega_mu);

struct SidebandRatio {
  double ratio = 0.0;  ///< (V_sb - V_dark) / (V_pump - V_dark), largest sideband
  double dark = 0.0;
  double pump_peak = 0.0;
  double pump_x = 0.0;
  double sideband_peak = 0.0;
  double sideband_x = 0.0;
  std::vector<double> sideband_ratios;  ///< every accepted sideband, by position
};

/// Sideband-to-pump ratio from a tunable-filter scan (voltage vs setpoint).
/// Dark level is the 5th percentile. A peak must clear the baseline by 3x its
/// spread and stand out from its neighbourhood by the same margin. Throws
/// FitRejected if fewer than two peaks qualify.
SidebandRatio sideband_ratio(const Trace& scan);

/// Trapezoidal integral of a PSD (W/Hz vs Hz) over f_center +- 2 f_bw.
/// Throws DomainError if the band is not inside the trace.
double integrate_psd(const Trace& psd, double f_center, double f_bw);

}  // namespace omx::calib
