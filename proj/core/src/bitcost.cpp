// SPDX-License-Identifier: Apache-2.0
#include "omx/bitcost.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "omx/bessel.hpp"
#include "omx/constants.hpp"
#include "omx/errors.hpp"

namespace omx::bitcost {

namespace {

using cd = std::complex<double>;

}  // namespace

void EncodingProblem::validate() const {
  if (!(alpha0_sq > 0.0)) throw DomainError("alpha0_sq must be positive");
  if (!(ratio_g > 0.0)) throw DomainError("ratio_g must be positive");
  if (!(ratio_k > 0.0)) throw DomainError("ratio_k must be positive");
  if (!(target_pe > 0.0 && target_pe <= 0.5)) throw DomainError("target_pe must lie in (0, 0.5]");
}

cd waveform_overlap(double h, double ratio_k, double phase_a, double phase_b) {
  if (!(h >= 0.0)) throw DomainError("modulation index must be >= 0");
  if (!(ratio_k > 0.0)) throw DomainError("ratio_k must be positive");
  const double a = 2.0 * h * std::sin(0.5 * (phase_a - phase_b));
  const double psi = 0.5 * (phase_a + phase_b);
  const int n_max = special::sideband_cutoff(std::abs(a));
  const auto j = special::bessel_j_orders(n_max, a);

  cd sum = j[0];
  cd i_pow{1.0, 0.0};
  for (int n = 1; n <= n_max; ++n) {
    i_pow *= cd{0.0, 1.0};
    const double jn = j[static_cast<std::size_t>(n)];
    if (jn == 0.0) break;
    const cd up = i_pow * std::polar(1.0, n * psi) * ratio_k / cd{ratio_k, -double(n)};
    // i^-n J_-n(a) = i^n J_n(a)
    const cd down = i_pow * std::polar(1.0, -n * psi) * ratio_k / cd{ratio_k, double(n)};
    sum += jn * (up + down);
  }
  return sum;
}

cd waveform_overlap(double h, double ratio_k) {
  if (!(h >= 0.0)) throw DomainError("modulation index must be >= 0");
  if (!(ratio_k > 0.0)) throw DomainError("ratio_k must be positive");
  if (h == 0.0) return {1.0, 0.0};
  const int n_max = special::sideband_cutoff(2.0 * h);
  const auto j = special::bessel_j_orders(n_max, 2.0 * h);
  cd sum = j[0];
  for (int n = 1; n <= n_max; ++n) {
    const double jn = j[static_cast<std::size_t>(n)];
    if (jn == 0.0) break;
    const cd up = ratio_k / cd{ratio_k, -double(n)};
    const cd down = ratio_k / cd{ratio_k, double(n)};
    sum += jn * (n % 2 == 0 ? up + down : up - down);
  }
  return sum;
}

double encoding_fidelity(double alpha0_sq, cd overlap) {
  if (!(alpha0_sq >= 0.0)) throw DomainError("alpha0_sq must be >= 0");
  if (std::abs(overlap) > 1.0 + 1e-12) throw DomainError("overlap magnitude exceeds 1");
  const double re = std::min(overlap.real(), 1.0);
  return std::exp(-2.0 * alpha0_sq * (1.0 - re));
}

double helstrom_error(double fidelity) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw DomainError("fidelity must lie in [0, 1]");
  return 0.5 * (1.0 - std::sqrt(1.0 - fidelity));
}

double error_probability(const EncodingProblem& prob, double n_phon) {
  if (!(n_phon >= 0.0)) throw DomainError("phonon number must be >= 0");
  const double h = prob.ratio_g * std::sqrt(n_phon);
  return helstrom_error(encoding_fidelity(prob.alpha0_sq, waveform_overlap(h, prob.ratio_k)));
}

double fast_limit_index() {
  // J0(2h) falls through 1/2 once on 2h in [1, 2].
  double lo = 0.5, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (special::bessel_j(0, 2.0 * mid) > 0.5) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double slow_limit_phonons(double ratio_g, double ratio_k) {
  return ratio_k * ratio_k / (4.0 * ratio_g * ratio_g);
}

double fast_limit_phonons(double ratio_g) {
  const double h = fast_limit_index();
  return h * h / (ratio_g * ratio_g);
}

PhononSearch required_phonons(const EncodingProblem& prob) {
  prob.validate();
  PhononSearch out;
  auto pe = [&](double n) {
    ++out.evaluations;
    return error_probability(prob, n);
  };

  const double p0 = pe(0.0);
  if (p0 <= prob.target_pe) {
    out.reached = true;
    out.n_phon = 0.0;
    out.error_probability = p0;
    return out;
  }

  const double upper = 10.0 * std::max(slow_limit_phonons(prob.ratio_g, prob.ratio_k),
                                       fast_limit_phonons(prob.ratio_g));
  out.upper_bound = std::max(upper, 1.0);
  const double decades = std::log10(out.upper_bound);
  const int steps = std::max(1, static_cast<int>(std::ceil(40.0 * decades)));

  double lo = 0.0, p_lo = p0;
  double hi = -1.0, p_hi = 0.5;
  double best_n = 0.0, best_p = p0;
  for (int i = 0; i <= steps; ++i) {
    const double n = i == steps ? out.upper_bound : std::pow(10.0, decades * i / steps);
    const double p = pe(n);
    if (p < best_p) {
      best_p = p;
      best_n = n;
    }
    if (p <= prob.target_pe) {
      hi = n;
      p_hi = p;
      break;
    }
    lo = n;
    p_lo = p;
  }

  if (hi < 0.0) {
    out.reached = false;
    out.n_phon = best_n;
    out.error_probability = best_p;
    return out;
  }

  while (hi - lo > 1e-3 * hi) {
    const double mid = 0.5 * (lo + hi);
    const double p = pe(mid);
    if (p > p_lo || p < p_hi) out.monotone_bracket = false;
    if (p <= prob.target_pe) {
      hi = mid;
      p_hi = p;
    } else {
      lo = mid;
      p_lo = p;
    }
  }
  out.reached = true;
  out.n_phon = hi;
  out.error_probability = p_hi;
  return out;
}

double e_bit_slow(double omega_m, double kappa, double g0, double eta_m) {
  if (!(omega_m > 0.0 && kappa > 0.0 && g0 > 0.0)) throw DomainError("rates must be positive");
  if (!(eta_m > 0.0 && eta_m <= 1.0)) throw DomainError("eta_m must lie in (0, 1]");
  return kHbar * omega_m * kappa * kappa / (4.0 * g0 * g0 * eta_m);
}

double e_bit_fast(double omega_m, double g0, double eta_m) {
  if (!(omega_m > 0.0 && g0 > 0.0)) throw DomainError("rates must be positive");
  if (!(eta_m > 0.0 && eta_m <= 1.0)) throw DomainError("eta_m must lie in (0, 1]");
  return kHbar * omega_m * omega_m * omega_m / (2.0 * g0 * g0 * eta_m);
}

double e_bit_numeric(const EncodingProblem& prob, double omega_m, double eta_m) {
  if (!(eta_m > 0.0 && eta_m <= 1.0)) throw DomainError("eta_m must lie in (0, 1]");
  const auto search = required_phonons(prob);
  if (!search.reached) {
    throw DomainError("target error probability not reached; best P_e = " +
                      std::to_string(search.error_probability));
  }
  return kHbar * omega_m * search.n_phon / eta_m;
}

}  // namespace omx::bitcost
