// SPDX-License-Identifier: Apache-2.0
#include "omx/core_model.hpp"

#include <cmath>
#include <string>

#include "omx/constants.hpp"
#include "omx/errors.hpp"

namespace omx::model {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

// Steady-state pump amplitude direction; |alpha0| = sqrt(n_c).
cd pump_amplitude(const OpticalCavity& c, const PumpState& pump) {
  const cd a = -1.0 / (kI * pump.delta + 0.5 * c.kappa);
  return std::sqrt(pump.n_c) * a / std::abs(a);
}

struct Factors {
  cd cavity;
  cd mech;
  cd det;
};

// Cavity and mechanical response factors for the resonant optical sideband.
// Blue: lower sideband at omega_p - omega, amplifying interaction.
// Red: upper sideband at omega_p + omega, beam-splitter interaction.
Factors factors(const DeviceParams& dev, const PumpState& pump, double omega) {
  const auto& c = dev.cavity;
  const auto& m = dev.mech;
  const double g2 = pump.g_eff * pump.g_eff;
  Factors f;
  if (pump.side() == PumpSide::blue) {
    f.cavity = kI * (pump.delta + omega) + 0.5 * c.kappa;
    f.mech = kI * (omega - m.omega_m) + 0.5 * m.gamma;
    f.det = f.cavity * f.mech - g2;
  } else {
    f.cavity = kI * (pump.delta - omega) + 0.5 * c.kappa;
    f.mech = kI * (m.omega_m - omega) + 0.5 * m.gamma;
    f.det = f.cavity * f.mech + g2;
  }
  return f;
}

}  // namespace

const char* to_string(PumpSide side) noexcept { return side == PumpSide::red ? "red" : "blue"; }

void OpticalCavity::validate() const {
  require(omega_c > 0.0, "omega_c must be positive");
  require(kappa > 0.0, "kappa must be positive");
  require(kappa_e > 0.0 && kappa_e <= kappa, "kappa_e must satisfy 0 < kappa_e <= kappa");
}

void MechanicalMode::validate() const {
  require(omega_m > 0.0, "omega_m must be positive");
  require(gamma > 0.0, "gamma must be positive");
  require(gamma_mu >= 0.0 && gamma_mu <= gamma, "gamma_mu must satisfy 0 <= gamma_mu <= gamma");
  require(gamma_e >= 0.0, "gamma_e must be >= 0");
}

double DeviceParams::c0() const noexcept { return 4.0 * g0 * g0 / (cavity.kappa * mech.gamma); }

double DeviceParams::eta_e() const noexcept { return eta_oc * cavity.eta_o() * mech.eta_m(); }

bool DeviceParams::sideband_resolved() const noexcept { return mech.omega_m > cavity.kappa; }

void DeviceParams::validate() const {
  cavity.validate();
  mech.validate();
  require(g0 > 0.0, "g0 must be positive");
  require(eta_oc > 0.0 && eta_oc <= 1.0, "eta_oc must satisfy 0 < eta_oc <= 1");
  require(z0 > 0.0, "z0 must be positive");
}

PumpState PumpState::from_photons(const DeviceParams& dev, double delta, double n_c) {
  require(n_c >= 0.0 && std::isfinite(n_c), "n_c must be finite and >= 0");
  PumpState s;
  s.delta = delta;
  s.n_c = n_c;
  s.g_eff = dev.g0 * std::sqrt(n_c);
  s.coop = 4.0 * s.g_eff * s.g_eff / (dev.cavity.kappa * dev.mech.gamma);
  return s;
}

PumpState PumpState::from_power(const DeviceParams& dev, double delta, double p_in,
                                double omega_p) {
  PumpState s = from_photons(dev, delta, intracavity_photons(dev.cavity, delta, p_in, omega_p));
  s.p_in = p_in;
  return s;
}

double ThreeModeParams::c_bc(double gamma) const noexcept {
  return 4.0 * g_bc * g_bc / (kappa_c * gamma);
}

void ThreeModeParams::validate() const {
  require(g_bc >= 0.0, "g_bc must be >= 0");
  require(kappa_c > 0.0, "kappa_c must be positive");
  require(kappa_ce > 0.0 && kappa_ce <= kappa_c, "kappa_ce must satisfy 0 < kappa_ce <= kappa_c");
}

double intracavity_photons(const OpticalCavity& cavity, double delta, double p_in,
                           double omega_p) {
  require(omega_p > 0.0, "omega_p must be positive");
  require(p_in >= 0.0, "p_in must be >= 0");
  const double flux = p_in / (kHbar * omega_p);
  const double half = 0.5 * cavity.kappa;
  return cavity.kappa_e * flux / (delta * delta + half * half);
}

std::complex<double> s_oo(const DeviceParams& dev, const PumpState& pump, double omega) {
  const auto f = factors(dev, pump, omega);
  const double g2 = pump.g_eff * pump.g_eff;
  cd denom;
  if (pump.side() == PumpSide::blue) {
    denom = f.cavity - g2 / f.mech;
  } else {
    denom = f.cavity + g2 / f.mech;
  }
  return 1.0 - dev.cavity.kappa_e / denom;
}

std::complex<double> s_oe(const DeviceParams& dev, const PumpState& pump, double omega) {
  const auto f = factors(dev, pump, omega);
  const double rate = std::sqrt(dev.cavity.kappa_e * dev.mech.gamma_mu);
  const cd alpha = pump_amplitude(dev.cavity, pump);
  return rate * kI * dev.g0 * alpha / f.det;
}

std::complex<double> s_eo(const DeviceParams& dev, const PumpState& pump, double omega) {
  const auto f = factors(dev, pump, omega);
  const double rate = std::sqrt(dev.cavity.kappa_e * dev.mech.gamma_mu);
  const cd alpha = std::conj(pump_amplitude(dev.cavity, pump));
  const double sign = pump.side() == PumpSide::blue ? -1.0 : 1.0;
  return sign * rate * kI * dev.g0 * alpha / f.det;
}

double total_efficiency(const DeviceParams& dev, double coop, PumpSide side) {
  require(coop >= 0.0, "cooperativity must be >= 0");
  if (side == PumpSide::blue) {
    if (coop >= 1.0) throw LasingError("blue-detuned cooperativity " + std::to_string(coop) + " >= 1");
    return dev.eta_e() * internal_gain(coop);
  }
  const double d = 1.0 + coop;
  return dev.eta_e() * 4.0 * coop / (d * d);
}

double internal_gain(double coop) {
  require(coop >= 0.0, "cooperativity must be >= 0");
  if (coop >= 1.0) throw LasingError("cooperativity " + std::to_string(coop) + " >= 1");
  const double d = 1.0 - coop;
  return 4.0 * coop / (d * d);
}

double coop_for_internal_gain(double gain) {
  require(gain >= 0.0 && std::isfinite(gain), "gain must be finite and >= 0");
  if (gain == 0.0) return 0.0;
  // Smaller root of G C^2 - (2G + 4) C + G = 0.
  const double s = std::sqrt(gain + 1.0);
  return (gain + 2.0 - 2.0 * s) / gain;
}

double three_mode_efficiency(const DeviceParams& dev, const ThreeModeParams& tm, double coop_ab,
                             PumpSide side) {
  require(coop_ab >= 0.0, "cooperativity must be >= 0");
  tm.validate();
  const double c_bc = tm.c_bc(dev.mech.gamma);
  const double d = side == PumpSide::blue ? 1.0 - coop_ab + c_bc : 1.0 + coop_ab + c_bc;
  if (side == PumpSide::blue && d <= 0.0) {
    throw LasingError("three-mode denominator 1 - C_ab + C_bc <= 0");
  }
  return dev.eta_oc * dev.cavity.eta_o() * (tm.kappa_ce / tm.kappa_c) * 4.0 * coop_ab * c_bc /
         (d * d);
}

double gamma_mu_mismatch(const ThreeModeParams& tm) {
  tm.validate();
  return 4.0 * tm.g_bc * tm.g_bc * tm.kappa_ce /
         (4.0 * tm.delta_bc * tm.delta_bc + tm.kappa_c * tm.kappa_c);
}

double qubit_coupling(const DeviceParams& dev, double z_c) {
  require(z_c > 0.0, "z_c must be positive");
  return 0.5 * std::sqrt(dev.mech.gamma_mu * dev.mech.omega_m) * std::sqrt(z_c / dev.z0);
}

double energy_per_qubit(const DeviceParams& dev) {
  const double eta = dev.cavity.eta_o() * dev.mech.eta_m();
  require(eta > 0.0, "energy per qubit needs eta_o eta_m > 0");
  require(dev.g0 > 0.0, "g0 must be positive");
  return kHbar * dev.cavity.omega_c * dev.cavity.kappa * dev.cavity.kappa_i() /
         (4.0 * dev.g0 * dev.g0 * eta);
}

}  // namespace omx::model
