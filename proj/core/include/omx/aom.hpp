// SPDX-License-Identifier: Apache-2.0
#pragma once

// Acousto-optic modulation: a microwave tone drives the mechanical mode,
// which phase-modulates the optical resonance with index h.

#include <span>
#include <vector>

#include "omx/core_model.hpp"

namespace omx::aom {

struct DriveState {
  double omega_mu = 0.0;  ///< drive frequency, rad/s
  double p_mu = 0.0;      ///< microwave power at the device, W
  double n_phon = 0.0;    ///< driven intracavity phonons
  double h = 0.0;         ///< modulation index g0 sqrt(n_phon) / omega_mu

  static DriveState from_power(const model::DeviceParams& dev, double omega_mu, double p_mu);
};

double phonons_from_drive(const model::MechanicalMode& mech, double omega_mu, double p_mu);

double modulation_index(double g0, double n_phon, double omega_mu);

/// n_phon that yields index h; inverse of modulation_index.
double phonons_for_index(double g0, double h, double omega_mu);

/// DC reflection of the modulated cavity at each detuning in delta_grid:
/// sum_n J_n(h)^2 |1 - kappa_e / (i(delta + n omega_mu) + kappa/2)|^2,
/// truncated at |n| <= special::sideband_cutoff(h).
std::vector<double> reflection_spectrum(const model::OpticalCavity& cavity, double h,
                                        double omega_mu, std::span<const double> delta_grid);

/// gamma_mu from an index h measured with power p_mu at omega_mu = omega_m.
double gamma_mu_from_h(double h, double omega_mu, double gamma, double g0, double p_mu);

struct HalfWave {
  double v_pi = 0.0;  ///< drive amplitude (V) for h = pi
  double p_pi = 0.0;  ///< v_pi^2 / (2 z0)

  /// p_pi / (2 pi bandwidth), bandwidth in Hz.
  double energy_per_bit(double bandwidth_hz) const;
};

/// Phase-modulation V_pi from index h reached at power p_mu.
HalfWave v_pi(double h, double p_mu, double z0);

}  // namespace omx::aom
