// SPDX-License-Identifier: Apache-2.0
#pragma once

// Parameter extraction from measured or synthetic traces, plus the synthetic
// trace generator used to validate every fit by round trip.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "omx/core_model.hpp"
#include "omx/fit_result.hpp"
#include "omx/trace.hpp"

namespace omx::extract {

/// Which side of critical coupling (kappa_e = kappa/2) a fit may explore.
enum class CouplingBranch { over, under };

/// Reflection dip versus laser frequency. Trace x: laser frequency (Hz);
/// y: normalised reflection. Returns omega_c, kappa, kappa_e (rad/s).
///
/// The dip is symmetric under kappa_e -> kappa - kappa_e, so the caller
/// picks the branch. Throws FitRejected if no dip stands 3x above the noise.
FitResult fit_optical_resonance(const Trace& trace, CouplingBranch branch = CouplingBranch::over);

struct QualityFactors {
  double loaded = 0.0;     ///< omega_c / kappa
  double intrinsic = 0.0;  ///< omega_c / kappa_i
};
QualityFactors quality_factors(const FitResult& resonance);

/// Fixed mechanical contribution to the sideband response.
struct SidebandPrior {
  double g_eff = 0.0;
  double omega_m = 0.0;
  double gamma = 1.0;
};

struct SidebandFit {
  FitResult best;         ///< delta, kappa, kappa_e from the better branch
  bool over_coupled = false;
  bool ambiguous = false; ///< branches not separated by one residual variance
  double ssr_over = 0.0;
  double ssr_under = 0.0;
};

/// Blue-pump optical sideband response S_oo versus probe frequency (Hz).
/// Accepts a complex trace or a phase-only trace (radians). Both coupling
/// branches are fitted and compared.
SidebandFit fit_sideband_response(const Trace& trace, const SidebandPrior& prior);

/// Single-branch variant, used for branch discrimination.
FitResult fit_sideband_response(const Trace& trace, const SidebandPrior& prior,
                                CouplingBranch branch);

/// Modulated reflection spectrum versus a detuning axis (Hz) whose offset and
/// scale are uncalibrated. Returns h, x_shift (Hz) and x_scale such that the
/// true detuning is 2 pi x_scale (x - x_shift). Multi-starts h over
/// {0.5, 1, 2, 4, 8}.
FitResult fit_aom_spectrum(const Trace& trace, const model::OpticalCavity& cavity,
                           double omega_mu);

/// Linear fit of blue-detuned backaction linewidths (rad/s) against n_c:
/// gamma_eff = gamma - 4 g0^2 n_c / kappa. Returns gamma and g0 (rad/s).
FitResult fit_backaction(std::span<const double> n_c, std::span<const double> linewidth,
                         double kappa);
/// Trace variant: x = n_c, y = linewidth in Hz.
FitResult fit_backaction(const Trace& trace, double kappa);

/// eta(n_c) = eta_e 4C/(1 -+ C)^2 with C = c0 n_c, fitted in log space.
/// Returns eta_e and c0. Blue data whose best fit needs C >= 1 throw
/// LasingError.
FitResult fit_efficiency_curve(std::span<const double> n_c, std::span<const double> eta,
                               model::PumpSide side = model::PumpSide::blue);
FitResult fit_efficiency_curve(const Trace& trace, model::PumpSide side = model::PumpSide::blue);

/// g0 = sqrt(c0 kappa gamma) / 2.
double g0_from_c0(double c0, double kappa, double gamma);

// --- synthesis --------------------------------------------------------------

enum class NoiseKind { none, additive, proportional };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::none;
  double sigma = 0.0;  ///< absolute (additive) or relative (proportional)
};

/// Model id plus parameters. Frequencies and rates are ordinary Hz, matching
/// the configuration files.
///
///   optical_resonance  f_c kappa kappa_e                          x: laser Hz
///   sideband_response  delta kappa kappa_e g_eff omega_m gamma    x: probe Hz (complex y)
///   sideband_phase     same as sideband_response                  x: probe Hz (y = arg)
///   aom_spectrum       kappa kappa_e f_mu h [x_shift x_scale]     x: detuning Hz
///   backaction         gamma g0 kappa                             x: n_c (y in Hz)
///   efficiency_blue    eta_e c0                                   x: n_c
///   efficiency_red     eta_e c0                                   x: n_c
///   filter_scan        pump_v ratio dark_v center width offset    x: setpoint V
///                      [artifact_v artifact_offset]
///   psd_tone           floor tone_w tone_f tone_width              x: Hz (W/Hz)
struct ModelSpec {
  std::string id;
  std::map<std::string, double> params;
};

/// Evaluates the model on `grid` and adds noise from a std::mt19937_64 seeded
/// with `seed`. Deterministic for a fixed seed; exact when noise is none.
/// Throws UnknownModel for an unrecognised id.
Trace synthesize_trace(const ModelSpec& model, std::span<const double> grid,
                       const NoiseSpec& noise = {}, std::uint64_t seed = 0);

/// Noise-free model values, real part (and imaginary part for complex models).
void evaluate_model(const ModelSpec& model, std::span<const double> grid,
                    std::vector<double>& y_re, std::vector<double>& y_im);

}  // namespace omx::extract
