// SPDX-License-Identifier: Apache-2.0
#include "omx/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "extraction_detail.hpp"
#include "omx/aom.hpp"
#include "omx/constants.hpp"
#include "omx/errors.hpp"

namespace omx::extract {

namespace detail {

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

double logit(double p) { return std::log(p / (1.0 - p)); }

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

double noise_sigma(std::span<const double> y) {
  if (y.size() < 3) return 0.0;
  std::vector<double> d(y.size() - 1);
  for (std::size_t i = 1; i < y.size(); ++i) d[i - 1] = y[i] - y[i - 1];
  const double m = median(d);
  for (auto& v : d) v = std::abs(v - m);
  return 1.4826 * median(d) / std::numbers::sqrt2;
}

std::vector<double> moving_average(std::span<const double> y, int width) {
  const auto n = static_cast<std::ptrdiff_t>(y.size());
  const std::ptrdiff_t half = width / 2;
  std::vector<double> out(y.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto lo = std::max<std::ptrdiff_t>(0, i - half);
    const auto hi = std::min<std::ptrdiff_t>(n - 1, i + half);
    double s = 0.0;
    for (auto k = lo; k <= hi; ++k) s += y[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(i)] = s / static_cast<double>(hi - lo + 1);
  }
  return out;
}

fit::LmOptions fit_options() {
  fit::LmOptions o;
  o.max_iterations = 200;
  o.step_tolerance = 1e-10;
  o.gradient_tolerance = 1e-12;
  return o;
}

Candidate best_of(const PhysicalResidual& residual, std::size_t m, const ToPhysical& to_phys,
                  const std::vector<std::vector<double>>& starts, int screen_iterations) {
  Candidate best;
  best.report.ssr = std::numeric_limits<double>::infinity();
  bool any = false;
  const fit::ResidualFn fn = [&](std::span<const double> u, std::span<double> r) {
    residual(to_phys(u), r);
  };
  auto options = fit_options();
  if (screen_iterations > 0) options.max_iterations = screen_iterations;
  for (const auto& s : starts) {
    fit::LmReport rep;
    try {
      rep = fit::levenberg_marquardt(fn, m, s, options);
    } catch (const std::invalid_argument&) {
      continue;
    } catch (const DomainError&) {
      continue;
    }
    if (!std::isfinite(rep.ssr)) continue;
    if (!any || rep.ssr < best.report.ssr) {
      best.report = std::move(rep);
      any = true;
    }
  }
  if (!any) throw FitRejected("no starting point produced a finite fit");
  if (screen_iterations > 0 && !best.report.converged) {
    best.report = fit::levenberg_marquardt(fn, m, best.report.params, fit_options());
  }
  best.physical = to_phys(best.report.params);
  return best;
}

FitResult to_result(const Candidate& c, std::size_t m, const ToPhysical& to_phys,
                    const std::vector<ParamSpec>& specs) {
  const auto& u = c.report.params;
  const std::size_t n = u.size();
  const double dof = static_cast<double>(m) - static_cast<double>(n);
  const double s2 = dof > 0.0 ? c.report.ssr / dof : 0.0;

  // d(physical)/d(internal) by central differences.
  const std::size_t np = c.physical.size();
  std::vector<double> jp(np * n);
  std::vector<double> w(u.begin(), u.end());
  const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  for (std::size_t j = 0; j < n; ++j) {
    const double step = base * std::max(std::abs(u[j]), 1.0);
    w[j] = u[j] + step;
    const auto plus = to_phys(w);
    w[j] = u[j] - step;
    const auto minus = to_phys(w);
    w[j] = u[j];
    for (std::size_t i = 0; i < np; ++i) jp[i * n + j] = (plus[i] - minus[i]) / (2.0 * step);
  }

  FitResult out;
  out.residual_norm = c.report.ssr;
  out.converged = c.report.converged;
  out.n_iter = c.report.iterations;
  out.gradient_norm = c.report.gradient_norm;
  const auto& cov = c.report.inverse_curvature;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    double var = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) var += jp[i * n + a] * cov[a * n + b] * jp[i * n + b];
    }
    FitParameter p;
    p.name = specs[i].name;
    p.value = c.physical[i];
    p.std_error = std::sqrt(std::max(var * s2, 0.0));
    p.unit = specs[i].unit;
    out.params.push_back(std::move(p));
  }
  return out;
}

}  // namespace detail

namespace {

using namespace detail;
using cd = std::complex<double>;

void require_points(const Trace& t, std::size_t n_params) {
  if (t.size() < n_params + 2) {
    throw FitRejected("trace has " + std::to_string(t.size()) + " points; need at least " +
                      std::to_string(n_params + 2));
  }
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  return s;
}

double dip_reflection(double delta, double kappa, double kappa_e) {
  return std::norm(1.0 - kappa_e / cd{0.5 * kappa, delta});
}

struct DipShape {
  std::size_t index = 0;
  double baseline = 1.0;
  double depth = 0.0;
  double fwhm = 0.0;  // in x units
};

// Locates the dominant dip and its half-depth width on a smoothed copy.
DipShape find_dip(std::span<const double> x, std::span<const double> y) {
  const auto smooth = moving_average(y, 5);
  DipShape d;
  d.index = static_cast<std::size_t>(std::min_element(smooth.begin(), smooth.end()) - smooth.begin());
  const std::size_t k = std::max<std::size_t>(3, y.size() / 20);
  std::vector<double> edges(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(k));
  edges.insert(edges.end(), y.end() - static_cast<std::ptrdiff_t>(k), y.end());
  d.baseline = median(edges);
  d.depth = d.baseline - smooth[d.index];

  const double half = d.baseline - 0.5 * d.depth;
  double left = std::numeric_limits<double>::quiet_NaN();
  double right = left;
  for (std::size_t i = d.index; i > 0; --i) {
    if (smooth[i - 1] >= half) {
      const double t = (half - smooth[i]) / (smooth[i - 1] - smooth[i]);
      left = x[i] + t * (x[i - 1] - x[i]);
      break;
    }
  }
  for (std::size_t i = d.index; i + 1 < smooth.size(); ++i) {
    if (smooth[i + 1] >= half) {
      const double t = (half - smooth[i]) / (smooth[i + 1] - smooth[i]);
      right = x[i] + t * (x[i + 1] - x[i]);
      break;
    }
  }
  const double xc = x[d.index];
  if (std::isfinite(left) && std::isfinite(right)) {
    d.fwhm = right - left;
  } else if (std::isfinite(left)) {
    d.fwhm = 2.0 * (xc - left);
  } else if (std::isfinite(right)) {
    d.fwhm = 2.0 * (right - xc);
  } else {
    d.fwhm = 0.25 * (x.back() - x.front());
  }
  if (!(d.fwhm > 0.0)) d.fwhm = (x.back() - x.front()) / static_cast<double>(x.size());
  return d;
}

void reject_if_no_dip(const DipShape& dip, std::span<const double> y) {
  const double sigma = noise_sigma(y);
  if (!(dip.depth > 0.0) || dip.depth < 3.0 * sigma) {
    throw FitRejected("no dip above 3x the noise floor (depth " + std::to_string(dip.depth) +
                      ", noise " + std::to_string(sigma) + ")");
  }
}

// Coupling fraction kappa_e/kappa confined to one side of critical coupling.
double branch_fraction(double u, CouplingBranch b) {
  const double s = logistic(u);
  return b == CouplingBranch::over ? 0.5 * (1.0 + s) : 0.5 * s;
}

double branch_internal(double fraction, CouplingBranch b) {
  double q = b == CouplingBranch::over ? 2.0 * fraction - 1.0 : 2.0 * fraction;
  q = std::clamp(q, 0.02, 0.98);
  return logit(q);
}

cd sideband_soo(double delta, double kappa, double kappa_e, const SidebandPrior& prior,
                double omega) {
  model::DeviceParams dev;
  dev.cavity.kappa = kappa;
  dev.cavity.kappa_e = kappa_e;
  dev.mech.omega_m = prior.omega_m;
  dev.mech.gamma = prior.gamma;
  model::PumpState pump;
  pump.delta = delta;
  pump.g_eff = prior.g_eff;
  return model::s_oo(dev, pump, omega);
}

std::vector<double> unwrap(std::span<const double> phase) {
  std::vector<double> out(phase.begin(), phase.end());
  double offset = 0.0;
  for (std::size_t i = 1; i < out.size(); ++i) {
    const double jump = phase[i] - phase[i - 1];
    if (jump > std::numbers::pi) offset -= kTwoPi;
    if (jump < -std::numbers::pi) offset += kTwoPi;
    out[i] = phase[i] + offset;
  }
  return out;
}

double wrap(double a) { return std::remainder(a, kTwoPi); }

}  // namespace

FitResult fit_optical_resonance(const Trace& trace, CouplingBranch branch) {
  if (trace.is_complex()) throw FitRejected("resonance fit needs a real reflection trace");
  require_points(trace, 3);
  const auto& x = trace.x();
  const auto& y = trace.y();
  const auto dip = find_dip(x, y);
  reject_if_no_dip(dip, y);

  const double f0 = x[dip.index];
  const double w = dip.fwhm;
  const double kappa0 = kTwoPi * w;
  const double dn = std::clamp(dip.depth / dip.baseline, 1e-6, 1.0);
  const double root = std::sqrt(1.0 - dn);
  const double frac0 = branch == CouplingBranch::over ? 0.5 * (1.0 + root) : 0.5 * (1.0 - root);

  const ToPhysical to_phys = [=](std::span<const double> u) {
    const double kappa = kappa0 * std::exp(u[1]);
    return std::vector<double>{f0 + u[0] * w, kappa, kappa * branch_fraction(u[2], branch)};
  };
  const PhysicalResidual residual = [&](const std::vector<double>& p, std::span<double> r) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      r[i] = dip_reflection(kTwoPi * (p[0] - x[i]), p[1], p[2]) - y[i];
    }
  };
  std::vector<std::vector<double>> starts;
  for (double ks : {1.0, 0.7, 1.4}) {
    starts.push_back({0.0, std::log(ks), branch_internal(frac0, branch)});
  }
  auto best = best_of(residual, x.size(), to_phys, starts);
  best.physical[0] = kTwoPi * best.physical[0];
  const ToPhysical angular_phys = [&](std::span<const double> u) {
    auto p = to_phys(u);
    p[0] *= kTwoPi;
    return p;
  };
  return to_result(best, x.size(), angular_phys,
                   {{"omega_c", ParamUnit::angular},
                    {"kappa", ParamUnit::angular},
                    {"kappa_e", ParamUnit::angular}});
}

QualityFactors quality_factors(const FitResult& resonance) {
  const double wc = resonance.value("omega_c");
  const double kappa = resonance.value("kappa");
  const double kappa_e = resonance.value("kappa_e");
  QualityFactors q;
  q.loaded = wc / kappa;
  q.intrinsic = kappa > kappa_e ? wc / (kappa - kappa_e) : std::numeric_limits<double>::infinity();
  return q;
}

FitResult fit_sideband_response(const Trace& trace, const SidebandPrior& prior,
                                CouplingBranch branch) {
  require_points(trace, 3);
  const auto& x = trace.x();
  const bool complex = trace.is_complex();
  const std::size_t n = x.size();
  const std::size_t m = complex ? 2 * n : n;
  const double span = x.back() - x.front();

  // Resonance position: deepest |S|^2 for complex data, steepest phase otherwise.
  std::size_t res = 0;
  double fwhm = 0.0;
  if (complex) {
    std::vector<double> mag(n);
    for (std::size_t i = 0; i < n; ++i) mag[i] = std::norm(cd{trace.y()[i], trace.y_im()[i]});
    const auto dip = find_dip(x, mag);
    res = dip.index;
    fwhm = dip.fwhm;
  } else {
    const auto ph = moving_average(unwrap(trace.y()), 5);
    double steep = -1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double s = std::abs((ph[i + 1] - ph[i - 1]) / (x[i + 1] - x[i - 1]));
      if (s > steep) {
        steep = s;
        res = i;
      }
    }
  }
  const double delta0 = -kTwoPi * x[res];

  std::vector<double> widths = {0.02, 0.05, 0.1, 0.2, 0.4};
  for (auto& f : widths) f *= kTwoPi * span;
  if (fwhm > 0.0) widths.insert(widths.begin(), kTwoPi * fwhm);
  const double kscale = widths.front();

  const ToPhysical to_phys = [=](std::span<const double> u) {
    const double kappa = kscale * std::exp(u[1]);
    return std::vector<double>{delta0 + u[0] * kscale, kappa,
                               kappa * branch_fraction(u[2], branch)};
  };
  const PhysicalResidual residual = [&](const std::vector<double>& p, std::span<double> r) {
    for (std::size_t i = 0; i < n; ++i) {
      const cd s = sideband_soo(p[0], p[1], p[2], prior, kTwoPi * x[i]);
      if (complex) {
        r[2 * i] = s.real() - trace.y()[i];
        r[2 * i + 1] = s.imag() - trace.y_im()[i];
      } else {
        r[i] = wrap(std::arg(s) - trace.y()[i]);
      }
    }
  };
  std::vector<std::vector<double>> starts;
  for (double k : widths) {
    for (double frac : {0.3, 0.7}) {
      const double f = branch == CouplingBranch::over ? 0.5 + 0.5 * frac : 0.5 * frac;
      starts.push_back({0.0, std::log(k / kscale), branch_internal(f, branch)});
    }
  }
  const auto best = best_of(residual, m, to_phys, starts);
  return to_result(best, m, to_phys,
                   {{"delta", ParamUnit::angular},
                    {"kappa", ParamUnit::angular},
                    {"kappa_e", ParamUnit::angular}});
}

SidebandFit fit_sideband_response(const Trace& trace, const SidebandPrior& prior) {
  SidebandFit out;
  auto over = fit_sideband_response(trace, prior, CouplingBranch::over);
  auto under = fit_sideband_response(trace, prior, CouplingBranch::under);
  out.ssr_over = over.residual_norm;
  out.ssr_under = under.residual_norm;
  out.over_coupled = out.ssr_over <= out.ssr_under;
  const std::size_t m = trace.is_complex() ? 2 * trace.size() : trace.size();
  const double s2 = std::min(out.ssr_over, out.ssr_under) / static_cast<double>(m - 3);
  out.ambiguous = std::abs(out.ssr_over - out.ssr_under) <= s2;
  out.best = out.over_coupled ? std::move(over) : std::move(under);
  return out;
}

FitResult fit_aom_spectrum(const Trace& trace, const model::OpticalCavity& cavity,
                           double omega_mu) {
  if (trace.is_complex()) throw FitRejected("AOM fit needs a real reflection trace");
  cavity.validate();
  require_points(trace, 3);
  const auto& x = trace.x();
  const auto& y = trace.y();
  const auto dip = find_dip(x, y);
  reject_if_no_dip(dip, y);

  // The dip area is independent of h, which fixes the axis scale up front.
  std::vector<double> loss(y.size()), xloss(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    loss[i] = dip.baseline - y[i];
    xloss[i] = x[i] * loss[i];
  }
  const double area = trapezoid(x, loss);
  if (!(area > 0.0)) throw FitRejected("AOM spectrum has no net dip area");
  const double center0 = trapezoid(x, xloss) / area;
  const double scale0 = cavity.kappa_e * cavity.kappa_i() / (cavity.kappa * area);
  const double width = cavity.kappa / (kTwoPi * scale0);

  const ToPhysical to_phys = [=](std::span<const double> u) {
    return std::vector<double>{std::abs(u[0]), center0 + u[1] * width, scale0 * std::exp(u[2])};
  };
  std::vector<double> delta(x.size());
  const PhysicalResidual residual = [&](const std::vector<double>& p, std::span<double> r) {
    for (std::size_t i = 0; i < x.size(); ++i) delta[i] = kTwoPi * p[2] * (x[i] - p[1]);
    const auto model = aom::reflection_spectrum(cavity, p[0], omega_mu, delta);
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = model[i] - y[i];
  };
  std::vector<std::vector<double>> starts;
  for (double h : {0.5, 1.0, 2.0, 4.0, 8.0}) starts.push_back({h, 0.0, 0.0});
  const auto best = best_of(residual, x.size(), to_phys, starts, 8);
  if (!best.report.converged) throw FitRejected("AOM fit did not converge from any start");
  return to_result(best, x.size(), to_phys,
                   {{"h", ParamUnit::dimensionless},
                    {"x_shift", ParamUnit::hertz},
                    {"x_scale", ParamUnit::dimensionless}});
}

FitResult fit_backaction(std::span<const double> n_c, std::span<const double> linewidth,
                         double kappa) {
  if (n_c.size() != linewidth.size()) throw std::invalid_argument("n_c and linewidth lengths differ");
  if (n_c.size() < 3) throw FitRejected("backaction fit needs at least 3 points");
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
  const auto m = static_cast<double>(n_c.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n_c.size(); ++i) {
    mx += n_c[i];
    my += linewidth[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n_c.size(); ++i) {
    sxx += (n_c[i] - mx) * (n_c[i] - mx);
    sxy += (n_c[i] - mx) * (linewidth[i] - my);
  }
  if (!(sxx > 0.0)) throw FitRejected("backaction fit needs distinct n_c values");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  if (!(slope < 0.0)) {
    throw DomainError("backaction slope " + std::to_string(slope) +
                      " is not negative; blue-detuned pumping narrows the linewidth");
  }
  double ssr = 0.0;
  for (std::size_t i = 0; i < n_c.size(); ++i) {
    const double r = intercept + slope * n_c[i] - linewidth[i];
    ssr += r * r;
  }
  const double s2 = ssr / (m - 2.0);
  const double var_slope = s2 / sxx;
  const double var_icpt = s2 * (1.0 / m + mx * mx / sxx);
  const double root = std::sqrt(-slope * kappa);

  FitResult out;
  out.params = {{"gamma", intercept, std::sqrt(var_icpt), ParamUnit::angular},
                {"g0", 0.5 * root, kappa * std::sqrt(var_slope) / (4.0 * root), ParamUnit::angular}};
  out.residual_norm = ssr;
  out.converged = true;
  out.n_iter = 1;
  out.gradient_norm = 0.0;
  return out;
}

FitResult fit_backaction(const Trace& trace, double kappa) {
  std::vector<double> lw(trace.y());
  for (auto& v : lw) v = angular(v);
  return fit_backaction(trace.x(), lw, kappa);
}

FitResult fit_efficiency_curve(std::span<const double> n_c, std::span<const double> eta,
                               model::PumpSide side) {
  if (n_c.size() != eta.size()) throw std::invalid_argument("n_c and eta lengths differ");
  if (n_c.size() < 4) throw FitRejected("efficiency fit needs at least 4 points");
  for (std::size_t i = 0; i < n_c.size(); ++i) {
    if (!(n_c[i] > 0.0) || !(eta[i] > 0.0)) {
      throw FitRejected("efficiency fit needs positive n_c and eta");
    }
  }
  const auto [lo_it, hi_it] = std::minmax_element(n_c.begin(), n_c.end());
  const double n_min = *lo_it, n_max = *hi_it;
  if (n_max < 100.0 * n_min) throw FitRejected("efficiency data must span at least 2 decades in n_c");
  const std::size_t i_min = static_cast<std::size_t>(lo_it - n_c.begin());
  // Linear regime: eta ~ 4 eta_e c0 n_c.
  const double product = eta[i_min] / (4.0 * n_min);

  const bool blue = side == model::PumpSide::blue;
  const double c_ref = blue ? 0.5 / n_max : 1.0 / n_max;
  const double eta_ref = product / c_ref;
  const ToPhysical to_phys = [=](std::span<const double> u) {
    const double c0 = blue ? logistic(u[1]) / n_max : c_ref * std::exp(u[1]);
    return std::vector<double>{eta_ref * std::exp(u[0]), c0};
  };
  const PhysicalResidual residual = [&](const std::vector<double>& p, std::span<double> r) {
    for (std::size_t i = 0; i < n_c.size(); ++i) {
      const double c = p[1] * n_c[i];
      const double d = blue ? 1.0 - c : 1.0 + c;
      r[i] = std::log(p[0] * 4.0 * c / (d * d)) - std::log(eta[i]);
    }
  };
  std::vector<std::vector<double>> starts;
  if (blue) {
    for (double cmax : {0.1, 0.3, 0.5, 0.7, 0.9, 0.97}) {
      const double c0 = cmax / n_max;
      starts.push_back({std::log(product / c0 / eta_ref), logit(cmax)});
    }
  } else {
    for (double cmax : {0.01, 0.1, 1.0, 10.0, 100.0}) {
      const double c0 = cmax / n_max;
      starts.push_back({std::log(product / c0 / eta_ref), std::log(c0 / c_ref)});
    }
  }
  const auto best = best_of(residual, n_c.size(), to_phys, starts);
  if (blue && best.physical[1] * n_max >= 1.0 - 1e-9) {
    throw LasingError("efficiency fit drives C to 1 at n_c = " + std::to_string(n_max));
  }
  if (blue) {
    // Same model with C0 free to cross threshold. A better fit there means
    // the data come from (or pass through) the self-oscillating regime.
    const ToPhysical free_phys = [=](std::span<const double> u) {
      return std::vector<double>{eta_ref * std::exp(u[0]), c_ref * std::exp(u[1])};
    };
    std::vector<std::vector<double>> free_starts;
    for (double cmax : {1.05, 1.5, 3.0}) {
      const double c0 = cmax / n_max;
      free_starts.push_back({std::log(product / c0 / eta_ref), std::log(c0 / c_ref)});
    }
    try {
      const auto above = best_of(residual, n_c.size(), free_phys, free_starts);
      if (above.physical[1] * n_max >= 1.0 && above.report.ssr < best.report.ssr) {
        throw LasingError("best efficiency fit has C = " +
                          std::to_string(above.physical[1] * n_max) + " at n_c = " +
                          std::to_string(n_max));
      }
    } catch (const FitRejected&) {
    }
  }
  return to_result(best, n_c.size(), to_phys,
                   {{"eta_e", ParamUnit::dimensionless}, {"c0", ParamUnit::dimensionless}});
}

FitResult fit_efficiency_curve(const Trace& trace, model::PumpSide side) {
  return fit_efficiency_curve(trace.x(), trace.y(), side);
}

double g0_from_c0(double c0, double kappa, double gamma) {
  if (!(c0 >= 0.0 && kappa > 0.0 && gamma > 0.0)) throw DomainError("g0 from C0 needs c0 >= 0, kappa, gamma > 0");
  return 0.5 * std::sqrt(c0 * kappa * gamma);
}

}  // namespace omx::extract
