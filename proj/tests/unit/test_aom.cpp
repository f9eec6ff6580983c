// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "omx/aom.hpp"
#include "omx/constants.hpp"
#include "omx/errors.hpp"

using namespace omx;
using namespace omx::aom;

namespace {

model::DeviceParams device() {
  model::DeviceParams d;
  d.cavity = {omega_from_wavelength(1550e-9), angular(1210e6), angular(800e6)};
  d.mech.omega_m = angular(1.85e9);
  d.mech.gamma = angular(1.93e6);
  d.mech.gamma_mu = angular(8.6e3);
  d.g0 = angular(70e3);
  d.eta_oc = 0.65;
  return d;
}

double bare(const model::OpticalCavity& c, double delta) {
  const std::complex<double> r = 1.0 - c.kappa_e / std::complex<double>(0.5 * c.kappa, delta);
  return std::norm(r);
}

}  // namespace

TEST(Drive, ZeroPower) {
  const auto d = device();
  EXPECT_EQ(phonons_from_drive(d.mech, d.mech.omega_m, 0.0), 0.0);
}

TEST(Drive, ModulationIndexAt580nW) {
  const auto d = device();
  const auto s = DriveState::from_power(d, d.mech.omega_m, 0.58e-6);
  EXPECT_NEAR(s.h, 1.0, 0.02);
  EXPECT_EQ(s.h, d.g0 * std::sqrt(s.n_phon) / d.mech.omega_m);
}

TEST(Drive, LorentzianHalfPoint) {
  const auto d = device();
  const double on = phonons_from_drive(d.mech, d.mech.omega_m, 1e-6);
  const double w_off = d.mech.omega_m - d.mech.gamma / 2.0;
  // Same photon flux at both frequencies.
  const double off = phonons_from_drive(d.mech, w_off, 1e-6 * w_off / d.mech.omega_m);
  EXPECT_NEAR(off, on / 2.0, 1e-12 * on);
  const double flux = 1e-6 / (kHbar * d.mech.omega_m);
  EXPECT_NEAR(on, 4.0 * d.mech.gamma_mu * flux / (d.mech.gamma * d.mech.gamma), 1e-12 * on);
}

TEST(ModulationIndex, Identities) {
  const double g0 = angular(70e3), w = angular(1.85e9);
  EXPECT_EQ(modulation_index(g0, 0.0, w), 0.0);
  EXPECT_NEAR(modulation_index(g0, 4e8, w), 2.0 * modulation_index(g0, 1e8, w), 1e-15);
  for (double h : {0.1, 1.0, 3.518}) {
    EXPECT_NEAR(modulation_index(g0, phonons_for_index(g0, h, w), w), h, 1e-13 * h);
  }
}

TEST(Reflection, ZeroIndexIsBareDip) {
  const auto d = device();
  std::vector<double> grid;
  for (int i = -100; i <= 100; ++i) grid.push_back(angular(5e7 * i));
  const auto r = reflection_spectrum(d.cavity, 0.0, d.mech.omega_m, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(r[i], bare(d.cavity, grid[i]), 1e-15);
}

TEST(Reflection, FarDetunedIsOne) {
  const auto d = device();
  const std::vector<double> grid = {-angular(1e13), angular(1e13)};
  for (double h : {0.5, 1.747, 4.812}) {
    for (double r : reflection_spectrum(d.cavity, h, d.mech.omega_m, grid)) EXPECT_NEAR(r, 1.0, 1e-6);
  }
}

TEST(Reflection, BoundedForRandomParameters) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    model::OpticalCavity c{1e15, angular(1e8 + 5e9 * u(rng)), 0.0};
    c.kappa_e = c.kappa * (1e-3 + (1.0 - 1e-3) * u(rng));
    const double h = 9.0 * u(rng);
    const double w = angular(1e8 + 5e9 * u(rng));
    std::vector<double> grid;
    for (int i = -200; i <= 200; ++i) grid.push_back(angular(1e8 * i) * (0.2 + u(rng)));
    std::sort(grid.begin(), grid.end());
    for (double r : reflection_spectrum(c, h, w, grid)) {
      EXPECT_GE(r, -1e-15);
      EXPECT_LE(r, 1.0 + 1e-12);
    }
  }
}

TEST(Reflection, MirrorSymmetric) {
  const auto d = device();
  std::vector<double> grid, mirrored;
  for (int i = -300; i <= 300; ++i) {
    grid.push_back(angular(2.7e7 * i));
    mirrored.push_back(-grid.back());
  }
  for (double h : {1.747, 4.812}) {
    const auto a = reflection_spectrum(d.cavity, h, d.mech.omega_m, grid);
    const auto b = reflection_spectrum(d.cavity, h, d.mech.omega_m, mirrored);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-13);
  }
}

TEST(Reflection, ReferenceValues) {
  // Independent evaluation with std::cyl_bessel_j and a wide sideband sum.
  const auto d = device();
  for (double h : {1.747, 4.812}) {
    std::vector<double> grid;
    for (int i = -40; i <= 40; ++i) grid.push_back(angular(1.5e8 * i));
    const auto r = reflection_spectrum(d.cavity, h, d.mech.omega_m, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double ref = 0.0;
      for (int n = -60; n <= 60; ++n) {
        const double j = std::cyl_bessel_j(std::abs(n), h) * ((n < 0 && n % 2) ? -1.0 : 1.0);
        ref += j * j * bare(d.cavity, grid[i] + n * d.mech.omega_m);
      }
      EXPECT_NEAR(r[i], ref, 1e-12);
    }
  }
}

TEST(GammaMu, ReferenceDevice) {
  const double g = gamma_mu_from_h(1.0, angular(1.85e9), angular(1.93e6), angular(70e3), 0.58e-6);
  EXPECT_NEAR(ordinary(g), 8.6e3, 0.02 * 8.6e3);
}

TEST(GammaMu, InvertsDrive) {
  const auto d = device();
  const auto s = DriveState::from_power(d, d.mech.omega_m, 0.3e-6);
  const double g = gamma_mu_from_h(s.h, d.mech.omega_m, d.mech.gamma, d.g0, 0.3e-6);
  EXPECT_NEAR(g, d.mech.gamma_mu, 1e-12 * d.mech.gamma_mu);
  EXPECT_NEAR(gamma_mu_from_h(2.0 * s.h, d.mech.omega_m, d.mech.gamma, d.g0, 0.3e-6), 4.0 * g,
              1e-12 * g);
  EXPECT_THROW(gamma_mu_from_h(1.0, d.mech.omega_m, d.mech.gamma, d.g0, 0.0), DomainError);
}

TEST(VPi, ReferenceDevice) {
  const auto hw = v_pi(3.518, 7.24e-6, 50.0);
  EXPECT_NEAR(hw.v_pi, 24.0e-3, 0.005 * 24.0e-3);
  EXPECT_NEAR(hw.p_pi, hw.v_pi * hw.v_pi / 100.0, 1e-20);
  EXPECT_NEAR(hw.energy_per_bit(10e6), 9e-14, 0.1e-13);
  EXPECT_THROW(v_pi(0.0, 1e-6, 50.0), DomainError);
}

TEST(VPi, SelfConsistentAtPi) {
  const double p = 3e-6;
  const auto hw = v_pi(std::numbers::pi, p, 50.0);
  EXPECT_NEAR(hw.v_pi, std::sqrt(2.0 * p * 50.0), 1e-15);
}
