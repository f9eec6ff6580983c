// SPDX-License-Identifier: Apache-2.0
#pragma once

// Energy cost of writing one classical bit onto a coherent optical state via
// optomechanical phase modulation, bounded by Helstrom-Holevo discrimination
// of the two encoded output states.
//
// Rates are expressed relative to the mechanical frequency: ratio_g = g0/omega_m,
// ratio_k = kappa/omega_m.

#include <complex>

namespace omx::bitcost {

struct EncodingProblem {
  double alpha0_sq = 1.0;  ///< mean photon number of the initial cavity state
  double ratio_g = 0.0;
  double ratio_k = 0.0;
  double target_pe = 0.1;

  void validate() const;
};

/// Overlap [A_a, A_b^dagger] of the output waveforms for encoding phases
/// phase_a and phase_b, as an exact Bessel series.
std::complex<double> waveform_overlap(double h, double ratio_k, double phase_a,
                                      double phase_b);

/// Overlap for the {0, pi} encoding: sum_n J_n(2h) kappa / (kappa - i n omega_m).
std::complex<double> waveform_overlap(double h, double ratio_k);

/// |<Psi_a|Psi_b>|^2 = exp(-2 alpha0_sq (1 - Re K)).
double encoding_fidelity(double alpha0_sq, std::complex<double> overlap);

/// Helstrom-Holevo minimum error for two equiprobable pure states.
double helstrom_error(double fidelity);

/// P_e for a given driven phonon number (omega_mu = omega_m).
double error_probability(const EncodingProblem& prob, double n_phon);

/// Modulation index solving J_0(2h) = 1/2.
double fast_limit_index();

/// kappa^2 / (4 g0^2), in units where omega_m = 1.
double slow_limit_phonons(double ratio_g, double ratio_k);
/// fast_limit_index()^2 / ratio_g^2.
double fast_limit_phonons(double ratio_g);

struct PhononSearch {
  bool reached = false;
  double n_phon = 0.0;            ///< smallest n found with P_e <= target
  double error_probability = 0.5; ///< P_e at n_phon (or best seen if not reached)
  double upper_bound = 0.0;       ///< end of the scanned range
  bool monotone_bracket = true;   ///< P_e decreased monotonically inside the bracket
  int evaluations = 0;
};

/// Smallest phonon number reaching target_pe. Scans a log grid with 40
/// points per decade from 1 to 10x the larger closed-form estimate, takes the
/// first grid crossing and bisects it to 1e-3 relative width.
PhononSearch required_phonons(const EncodingProblem& prob);

/// hbar omega_m kappa^2 / (4 g0^2 eta_m), valid for kappa >> omega_m.
double e_bit_slow(double omega_m, double kappa, double g0, double eta_m);
/// hbar omega_m omega_m^2 / (2 g0^2 eta_m), valid for kappa << omega_m.
double e_bit_fast(double omega_m, double g0, double eta_m);
/// hbar omega_m n_phon / eta_m with n_phon from required_phonons.
double e_bit_numeric(const EncodingProblem& prob, double omega_m, double eta_m);

}  // namespace omx::bitcost
