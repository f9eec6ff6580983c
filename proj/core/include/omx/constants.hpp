// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <numbers>

namespace omx {

inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kSpeedOfLight = 299792458.0;   // m/s
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Ordinary frequency (Hz) to angular frequency (rad/s).
constexpr double angular(double hz) noexcept { return kTwoPi * hz; }

/// Angular frequency (rad/s) to ordinary frequency (Hz).
constexpr double ordinary(double rad_per_s) noexcept { return rad_per_s / kTwoPi; }

constexpr double omega_from_wavelength(double meters) noexcept {
  return kTwoPi * kSpeedOfLight / meters;
}

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

}  // namespace omx
