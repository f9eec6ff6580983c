// SPDX-License-Identifier: Apache-2.0
#include "omx/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "omx/constants.hpp"
#include "omx/errors.hpp"

namespace omx::calib {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive");
}

void require_fraction(double v, const char* what) {
  if (!(v > 0.0 && v <= 1.0)) throw DomainError(std::string(what) + " must lie in (0, 1]");
}

double percentile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

struct Peak {
  std::size_t index;
  double x;
  double height;
};

// Vertex of the parabola through the three raw samples around i.
Peak refine(std::span<const double> x, std::span<const double> y, std::size_t i) {
  if (i == 0 || i + 1 >= y.size()) return {i, x[i], y[i]};
  const double a = y[i - 1], b = y[i], c = y[i + 1];
  const double denom = a - 2.0 * b + c;
  if (!(denom < 0.0)) return {i, x[i], b};
  const double t = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
  const double h = b - 0.25 * (a - c) * t;
  const double xs = t >= 0.0 ? x[i] + t * (x[i + 1] - x[i]) : x[i] + t * (x[i] - x[i - 1]);
  return {i, xs, h};
}

// Height of v[i] above the higher of the two minima separating it from
// taller samples (or the ends) on either side.
double prominence(std::span<const double> v, std::size_t i) {
  double left = v[i];
  for (std::size_t k = i; k-- > 0;) {
    if (v[k] > v[i]) break;
    left = std::min(left, v[k]);
  }
  double right = v[i];
  for (std::size_t k = i + 1; k < v.size(); ++k) {
    if (v[k] > v[i]) break;
    right = std::min(right, v[k]);
  }
  return v[i] - std::max(left, right);
}

}  // namespace

void ChainParams::validate() const {
  require_fraction(eta_cable, "eta_cable");
  require_fraction(eta_out, "eta_out");
  require_positive(z0, "z0");
}

double microwave_input_flux(double p_vna, double omega_mu, const ChainParams& chain) {
  if (!(p_vna >= 0.0)) throw DomainError("microwave power must be >= 0");
  require_positive(omega_mu, "omega_mu");
  chain.validate();
  return chain.eta_cable * p_vna / (kHbar * omega_mu);
}

DetectionGain detection_gain(double p_cal_mu, double p_cal_o, double eta_out) {
  require_positive(p_cal_mu, "p_cal_mu");
  require_positive(p_cal_o, "p_cal_o");
  require_fraction(eta_out, "eta_out");
  return {p_cal_mu / (p_cal_o / eta_out)};
}

double optical_output_flux(double p_out_mu, DetectionGain gain, double omega_c) {
  require_positive(p_out_mu, "p_out_mu");
  require_positive(gain.gain, "detection gain");
  require_positive(omega_c, "omega_c");
  return p_out_mu / (gain.gain * kHbar * omega_c);
}

double oe_efficiency(double p_out_mu, DetectionGain gain, double omega_c, double flux_in_mu) {
  require_positive(flux_in_mu, "microwave input flux");
  return optical_output_flux(p_out_mu, gain, omega_c) / flux_in_mu;
}

double microwave_output_flux(double s21_sq, double p_eom_mu, const ChainParams& chain,
                             double omega_mu) {
  require_positive(s21_sq, "|S21|^2");
  require_positive(p_eom_mu, "p_eom_mu");
  require_positive(omega_mu, "omega_mu");
  chain.validate();
  return p_eom_mu * s21_sq / (chain.eta_cable * kHbar * omega_mu);
}

double optical_input_flux(double p_pump_in, double r, double omega_c) {
  require_positive(p_pump_in, "p_pump_in");
  if (!(r > 0.0 && r < 1.0)) throw DomainError("sideband ratio must lie in (0, 1)");
  require_positive(omega_c, "omega_c");
  return p_pump_in * r / (kHbar * omega_c);
}

double eo_efficiency(double s21_sq, double p_eom_mu, const ChainParams& chain, double r,
                     double p_pump_in, double omega_c, double omega_mu) {
  return microwave_output_flux(s21_sq, p_eom_mu, chain, omega_mu) /
         optical_input_flux(p_pump_in, r, omega_c);
}

SidebandRatio sideband_ratio(const Trace& scan) {
  const auto& x = scan.x();
  const auto& y = scan.y();
  const std::size_t n = y.size();
  if (n < 7) throw FitRejected("filter scan too short");

  SidebandRatio out;
  out.dark = percentile(y, 0.05);

  std::vector<double> sorted(y);
  const double med = percentile(sorted, 0.5);
  for (auto& v : sorted) v = std::abs(v - med);
  const double spread = 1.4826 * percentile(sorted, 0.5);
  const double threshold = med + 3.0 * spread;

  std::vector<double> smooth(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i < 2 ? 0 : i - 2;
    const std::size_t hi = std::min(n - 1, i + 2);
    double s = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) s += y[k];
    smooth[i] = s / static_cast<double>(hi - lo + 1);
  }

  std::vector<Peak> peaks;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (smooth[i] > threshold && smooth[i] >= smooth[i - 1] && smooth[i] > smooth[i + 1] &&
        prominence(smooth, i) > 3.0 * spread) {
      // Refine on the raw samples around the smoothed maximum.
      const std::size_t lo = i < 2 ? 0 : i - 2;
      const std::size_t hi = std::min(n - 1, i + 2);
      std::size_t best = lo;
      for (std::size_t k = lo; k <= hi; ++k) {
        if (y[k] > y[best]) best = k;
      }
      peaks.push_back(refine(x, y, best));
    }
  }
  if (peaks.size() < 2) {
    throw FitRejected("filter scan has " + std::to_string(peaks.size()) +
                      " peak(s) above the baseline; need a pump and a sideband");
  }

  const auto pump = *std::max_element(peaks.begin(), peaks.end(),
                                      [](const Peak& a, const Peak& b) { return a.height < b.height; });
  out.pump_peak = pump.height;
  out.pump_x = pump.x;

  const double half = out.dark + 0.5 * (pump.height - out.dark);
  std::size_t left = pump.index, right = pump.index;
  while (left > 0 && smooth[left] > half) --left;
  while (right + 1 < n && smooth[right] > half) ++right;
  const std::size_t fwhm = std::max<std::size_t>(1, right - left);
  const std::size_t exclusion = std::max<std::size_t>(3, 3 * fwhm);

  const double span = pump.height - out.dark;
  double best_ratio = -1.0;
  for (const auto& p : peaks) {
    const std::size_t dist = p.index > pump.index ? p.index - pump.index : pump.index - p.index;
    if (dist <= exclusion) continue;
    const double r = (p.height - out.dark) / span;
    out.sideband_ratios.push_back(r);
    if (r > best_ratio) {
      best_ratio = r;
      out.sideband_peak = p.height;
      out.sideband_x = p.x;
    }
  }
  if (out.sideband_ratios.empty()) {
    throw FitRejected("no sideband peak outside the pump exclusion window");
  }
  out.ratio = best_ratio;
  return out;
}

double integrate_psd(const Trace& psd, double f_center, double f_bw) {
  require_positive(f_bw, "f_bw");
  const auto& x = psd.x();
  const auto& y = psd.y();
  if (x.size() < 2) throw DomainError("PSD trace needs at least two samples");
  const double a = f_center - 2.0 * f_bw;
  const double b = f_center + 2.0 * f_bw;
  if (a < x.front() || b > x.back()) {
    throw DomainError("integration band lies outside the PSD trace");
  }
  auto interp = [&](std::size_t i, double xv) {
    const double t = (xv - x[i]) / (x[i + 1] - x[i]);
    return y[i] + t * (y[i + 1] - y[i]);
  };
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double lo = std::max(a, x[i]);
    const double hi = std::min(b, x[i + 1]);
    if (hi <= lo) continue;
    sum += 0.5 * (interp(i, lo) + interp(i, hi)) * (hi - lo);
  }
  return sum;
}

}  // namespace omx::calib
