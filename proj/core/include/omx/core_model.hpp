// SPDX-License-Identifier: Apache-2.0
#pragma once

// Closed-form forward model of a piezo-optomechanical transducer: one
// optical cavity mode, one localized mechanical mode coupled to a microwave
// line, linearized around a strong optical pump.
//
// All rates and frequencies are angular (rad/s). Detuning follows
// delta = omega_c - omega_p, so a blue-detuned pump has delta < 0.

#include <complex>
#include <optional>

namespace omx::model {

enum class PumpSide { red, blue };

const char* to_string(PumpSide side) noexcept;

struct OpticalCavity {
  double omega_c = 0.0;  ///< resonance frequency
  double kappa = 0.0;    ///< total energy decay rate
  double kappa_e = 0.0;  ///< decay into the coupling waveguide

  double kappa_i() const noexcept { return kappa - kappa_e; }
  double eta_o() const noexcept { return kappa_e / kappa; }

  /// Throws DomainError unless 0 < kappa_e <= kappa.
  void validate() const;
};

struct MechanicalMode {
  double omega_m = 0.0;
  double gamma = 0.0;     ///< total decay rate
  double gamma_mu = 0.0;  ///< decay into the microwave transmission line
  double gamma_e = 0.0;   ///< decay into the phononic waveguide

  double eta_m() const noexcept { return gamma_mu / gamma; }

  void validate() const;
};

struct DeviceParams {
  OpticalCavity cavity;
  MechanicalMode mech;
  double g0 = 0.0;      ///< vacuum optomechanical coupling
  double eta_oc = 1.0;  ///< fiber-to-chip efficiency
  double z0 = 50.0;     ///< line impedance, ohm

  /// Single-photon cooperativity 4 g0^2 / (kappa gamma).
  double c0() const noexcept;
  /// Total external coupling efficiency eta_oc * eta_o * eta_m.
  double eta_e() const noexcept;
  /// omega_m > kappa. The sideband formulas drop the off-resonant sideband
  /// and lose accuracy when this does not hold.
  bool sideband_resolved() const noexcept;

  void validate() const;
};

struct PumpState {
  double delta = 0.0;
  std::optional<double> p_in;  ///< fiber input power (W), when known
  double n_c = 0.0;            ///< intracavity photons
  double g_eff = 0.0;          ///< g0 sqrt(n_c)
  double coop = 0.0;           ///< 4 g_eff^2 / (kappa gamma)

  PumpSide side() const noexcept { return delta < 0.0 ? PumpSide::blue : PumpSide::red; }

  static PumpState from_photons(const DeviceParams& dev, double delta, double n_c);
  static PumpState from_power(const DeviceParams& dev, double delta, double p_in,
                              double omega_p);
};

struct ThreeModeParams {
  double g_bc = 0.0;      ///< OMC mode to IDT electromechanical mode coupling
  double kappa_c = 0.0;   ///< electromechanical mode total decay
  double kappa_ce = 0.0;  ///< electromechanical mode external decay
  double delta_bc = 0.0;  ///< frequency mismatch between the two modes

  double c_bc(double gamma) const noexcept;
  void validate() const;
};

/// |alpha_0|^2 for a pump of power p_in at omega_p. Linear in p_in.
double intracavity_photons(const OpticalCavity& cavity, double delta, double p_in,
                           double omega_p);

/// Optical-sideband reflection at probe offset omega, including the direct
/// feedthrough term. The mechanical susceptibility enters with the sign of
/// the pump side: amplifying (blue) or beam-splitter (red).
std::complex<double> s_oo(const DeviceParams& dev, const PumpState& pump, double omega);

/// Microwave-to-optical conversion amplitude at microwave frequency omega.
std::complex<double> s_oe(const DeviceParams& dev, const PumpState& pump, double omega);

/// Optical-to-microwave conversion amplitude; |s_eo| == |s_oe|.
std::complex<double> s_eo(const DeviceParams& dev, const PumpState& pump, double omega);

/// Peak end-to-end efficiency eta_oc eta_o eta_m 4C/(1 +- C)^2 at
/// delta = +-omega_m. Blue side throws LasingError for coop >= 1.
double total_efficiency(const DeviceParams& dev, double coop, PumpSide side);

/// Blue-side internal gain 4C/(1-C)^2, for 0 <= coop < 1.
double internal_gain(double coop);

/// Inverse of internal_gain on [0, 1).
double coop_for_internal_gain(double gain);

/// Peak efficiency of the optical / OMC-mechanical / IDT-electromechanical
/// chain, including the fiber-to-chip factor so that it is comparable with
/// total_efficiency.
double three_mode_efficiency(const DeviceParams& dev, const ThreeModeParams& tm,
                             double coop_ab, PumpSide side);

/// Effective gamma_mu = 4 g_bc^2 kappa_ce / (4 delta_bc^2 + kappa_c^2).
double gamma_mu_mismatch(const ThreeModeParams& tm);

/// Coupling rate to a resonant circuit of characteristic impedance z_c.
double qubit_coupling(const DeviceParams& dev, double z_c);

/// Optical energy dissipated per converted qubit at C = 1, in joule.
double energy_per_qubit(const DeviceParams& dev);

}  // namespace omx::model
