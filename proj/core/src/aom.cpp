// SPDX-License-Identifier: Apache-2.0
#include "omx/aom.hpp"

#include <cmath>
#include <numbers>

#include "omx/bessel.hpp"
#include "omx/constants.hpp"
#include "omx/errors.hpp"

namespace omx::aom {

DriveState DriveState::from_power(const model::DeviceParams& dev, double omega_mu, double p_mu) {
  DriveState s;
  s.omega_mu = omega_mu;
  s.p_mu = p_mu;
  s.n_phon = phonons_from_drive(dev.mech, omega_mu, p_mu);
  s.h = modulation_index(dev.g0, s.n_phon, omega_mu);
  return s;
}

double phonons_from_drive(const model::MechanicalMode& mech, double omega_mu, double p_mu) {
  if (!(p_mu >= 0.0)) throw DomainError("microwave power must be >= 0");
  if (!(omega_mu > 0.0)) throw DomainError("drive frequency must be positive");
  const double flux = p_mu / (kHbar * omega_mu);
  const double det = mech.omega_m - omega_mu;
  const double half = 0.5 * mech.gamma;
  return mech.gamma_mu * flux / (det * det + half * half);
}

double modulation_index(double g0, double n_phon, double omega_mu) {
  if (!(n_phon >= 0.0)) throw DomainError("phonon number must be >= 0");
  return g0 * std::sqrt(n_phon) / omega_mu;
}

double phonons_for_index(double g0, double h, double omega_mu) {
  const double root = h * omega_mu / g0;
  return root * root;
}

std::vector<double> reflection_spectrum(const model::OpticalCavity& cavity, double h,
                                        double omega_mu, std::span<const double> delta_grid) {
  const int n_max = special::sideband_cutoff(h);
  const auto j = special::bessel_j_orders(n_max, h);
  std::vector<double> weight(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) weight[k] = j[k] * j[k];

  // |1 - kappa_e/(i d + kappa/2)|^2 = 1 - kappa_e kappa_i / (d^2 + kappa^2/4)
  const double depth = cavity.kappa_e * cavity.kappa_i();
  const double half_sq = 0.25 * cavity.kappa * cavity.kappa;
  auto lorentz = [&](double d) { return 1.0 - depth / (d * d + half_sq); };

  std::vector<double> out;
  out.reserve(delta_grid.size());
  for (double delta : delta_grid) {
    double sum = weight[0] * lorentz(delta);
    for (int n = 1; n <= n_max; ++n) {
      const double w = weight[static_cast<std::size_t>(n)];
      if (w < 1e-300) break;
      sum += w * (lorentz(delta + n * omega_mu) + lorentz(delta - n * omega_mu));
    }
    out.push_back(sum);
  }
  return out;
}

double gamma_mu_from_h(double h, double omega_mu, double gamma, double g0, double p_mu) {
  if (!(p_mu > 0.0)) throw DomainError("gamma_mu from h needs positive microwave power");
  if (!(h > 0.0)) throw DomainError("gamma_mu from h needs h > 0");
  const double flux = p_mu / (kHbar * omega_mu);
  return h * h * omega_mu * omega_mu * gamma * gamma / (4.0 * g0 * g0 * flux);
}

double HalfWave::energy_per_bit(double bandwidth_hz) const {
  if (!(bandwidth_hz > 0.0)) throw DomainError("bandwidth must be positive");
  return p_pi / (kTwoPi * bandwidth_hz);
}

HalfWave v_pi(double h, double p_mu, double z0) {
  if (!(h > 0.0)) throw DomainError("V_pi needs h > 0");
  if (!(p_mu > 0.0)) throw DomainError("V_pi needs positive microwave power");
  if (!(z0 > 0.0)) throw DomainError("impedance must be positive");
  HalfWave out;
  out.v_pi = std::numbers::pi * std::sqrt(2.0 * p_mu * z0) / h;
  out.p_pi = out.v_pi * out.v_pi / (2.0 * z0);
  return out;
}

}  // namespace omx::aom
