// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "omx/aom.hpp"
#include "omx/constants.hpp"
#include "omx/core_model.hpp"
#include "omx/errors.hpp"
#include "omx/extraction.hpp"

namespace omx::extract {

namespace {

using cd = std::complex<double>;

struct ModelInfo {
  const char* id;
  std::set<std::string> required;
  std::set<std::string> optional;
  TraceKind kind;
  const char* x_unit;
};

const std::vector<ModelInfo>& registry() {
  static const std::vector<ModelInfo> models = {
      {"optical_resonance", {"f_c", "kappa", "kappa_e"}, {}, TraceKind::reflection, "Hz"},
      {"sideband_response",
       {"delta", "kappa", "kappa_e", "g_eff", "omega_m", "gamma"},
       {},
       TraceKind::complex_response,
       "Hz"},
      {"sideband_phase",
       {"delta", "kappa", "kappa_e", "g_eff", "omega_m", "gamma"},
       {},
       TraceKind::phase,
       "Hz"},
      {"aom_spectrum",
       {"kappa", "kappa_e", "f_mu", "h"},
       {"x_shift", "x_scale"},
       TraceKind::reflection,
       "Hz"},
      {"backaction", {"gamma", "g0", "kappa"}, {}, TraceKind::linewidth, "1"},
      {"efficiency_blue", {"eta_e", "c0"}, {}, TraceKind::efficiency, "1"},
      {"efficiency_red", {"eta_e", "c0"}, {}, TraceKind::efficiency, "1"},
      {"filter_scan",
       {"pump_v", "ratio", "dark_v", "center", "width", "offset"},
       {"artifact_v", "artifact_offset"},
       TraceKind::voltage,
       "V"},
      {"psd_tone", {"floor", "tone_w", "tone_f", "tone_width"}, {}, TraceKind::psd, "Hz"},
  };
  return models;
}

const ModelInfo& lookup(const ModelSpec& spec) {
  for (const auto& m : registry()) {
    if (spec.id != m.id) continue;
    for (const auto& r : m.required) {
      if (!spec.params.count(r)) {
        throw std::invalid_argument("model '" + spec.id + "' needs parameter '" + r + "'");
      }
    }
    for (const auto& [k, v] : spec.params) {
      if (!m.required.count(k) && !m.optional.count(k)) {
        throw std::invalid_argument("model '" + spec.id + "' has no parameter '" + k + "'");
      }
      if (!std::isfinite(v)) {
        throw std::invalid_argument("model '" + spec.id + "' parameter '" + k + "' is not finite");
      }
    }
    return m;
  }
  throw UnknownModel("unknown model id '" + spec.id + "'");
}

double get(const ModelSpec& s, const char* key, double fallback = 0.0) {
  const auto it = s.params.find(key);
  return it == s.params.end() ? fallback : it->second;
}

double lorentz_peak(double dx, double fwhm) {
  const double u = 2.0 * dx / fwhm;
  return 1.0 / (1.0 + u * u);
}

cd sideband(const ModelSpec& s, double omega) {
  model::DeviceParams dev;
  dev.cavity.kappa = angular(get(s, "kappa"));
  dev.cavity.kappa_e = angular(get(s, "kappa_e"));
  dev.cavity.omega_c = 1.0;
  dev.mech.omega_m = angular(get(s, "omega_m"));
  dev.mech.gamma = angular(get(s, "gamma"));
  dev.cavity.validate();
  model::PumpState pump;
  pump.delta = angular(get(s, "delta"));
  pump.g_eff = angular(get(s, "g_eff"));
  return model::s_oo(dev, pump, omega);
}

}  // namespace

void evaluate_model(const ModelSpec& spec, std::span<const double> grid,
                    std::vector<double>& y_re, std::vector<double>& y_im) {
  lookup(spec);
  const std::size_t n = grid.size();
  y_re.assign(n, 0.0);
  y_im.clear();
  const std::string& id = spec.id;

  if (id == "optical_resonance") {
    model::OpticalCavity c{angular(get(spec, "f_c")), angular(get(spec, "kappa")),
                           angular(get(spec, "kappa_e"))};
    c.validate();
    for (std::size_t i = 0; i < n; ++i) {
      const double delta = kTwoPi * (get(spec, "f_c") - grid[i]);
      y_re[i] = std::norm(1.0 - c.kappa_e / cd{0.5 * c.kappa, delta});
    }
  } else if (id == "sideband_response") {
    y_im.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const cd s = sideband(spec, angular(grid[i]));
      y_re[i] = s.real();
      y_im[i] = s.imag();
    }
  } else if (id == "sideband_phase") {
    for (std::size_t i = 0; i < n; ++i) y_re[i] = std::arg(sideband(spec, angular(grid[i])));
  } else if (id == "aom_spectrum") {
    model::OpticalCavity c{1.0, angular(get(spec, "kappa")), angular(get(spec, "kappa_e"))};
    c.validate();
    const double shift = get(spec, "x_shift", 0.0);
    const double scale = get(spec, "x_scale", 1.0);
    std::vector<double> delta(n);
    for (std::size_t i = 0; i < n; ++i) delta[i] = kTwoPi * scale * (grid[i] - shift);
    y_re = aom::reflection_spectrum(c, get(spec, "h"), angular(get(spec, "f_mu")), delta);
  } else if (id == "backaction") {
    const double g0 = get(spec, "g0");
    for (std::size_t i = 0; i < n; ++i) {
      y_re[i] = get(spec, "gamma") - 4.0 * g0 * g0 * grid[i] / get(spec, "kappa");
    }
  } else if (id == "efficiency_blue" || id == "efficiency_red") {
    const bool blue = id == "efficiency_blue";
    for (std::size_t i = 0; i < n; ++i) {
      const double c = get(spec, "c0") * grid[i];
      if (blue && c >= 1.0) throw LasingError("synthetic efficiency point at C >= 1");
      const double d = blue ? 1.0 - c : 1.0 + c;
      y_re[i] = get(spec, "eta_e") * 4.0 * c / (d * d);
    }
  } else if (id == "filter_scan") {
    const double pump = get(spec, "pump_v");
    const double ratio = get(spec, "ratio");
    const double center = get(spec, "center");
    const double width = get(spec, "width");
    const double offset = get(spec, "offset");
    const double art = get(spec, "artifact_v", 0.0);
    const double art_off = get(spec, "artifact_offset", 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = grid[i];
      y_re[i] = get(spec, "dark_v") + pump * lorentz_peak(x - center, width) +
                ratio * pump *
                    (lorentz_peak(x - center - offset, width) +
                     lorentz_peak(x - center + offset, width)) +
                art * lorentz_peak(x - center - art_off, width);
    }
  } else if (id == "psd_tone") {
    const double floor = get(spec, "floor");
    const double sigma = get(spec, "tone_width");
    const double norm = get(spec, "tone_w") / (sigma * std::sqrt(2.0 * std::numbers::pi));
    for (std::size_t i = 0; i < n; ++i) {
      const double u = (grid[i] - get(spec, "tone_f")) / sigma;
      y_re[i] = floor + norm * std::exp(-0.5 * u * u);
    }
  }
}

Trace synthesize_trace(const ModelSpec& spec, std::span<const double> grid,
                       const NoiseSpec& noise, std::uint64_t seed) {
  const auto& info = lookup(spec);
  std::vector<double> re, im;
  evaluate_model(spec, grid, re, im);

  if (noise.kind != NoiseKind::none && noise.sigma != 0.0) {
    if (!(noise.sigma > 0.0)) throw std::invalid_argument("noise sigma must be > 0");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < re.size(); ++i) {
      const double mag = im.empty() ? std::abs(re[i]) : std::hypot(re[i], im[i]);
      const double s = noise.kind == NoiseKind::proportional ? noise.sigma * mag : noise.sigma;
      re[i] += s * normal(rng);
      if (!im.empty()) im[i] += s * normal(rng);
    }
  }

  std::map<std::string, std::string> meta{{"model", spec.id}, {"seed", std::to_string(seed)}};
  for (const auto& [k, v] : spec.params) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    meta["param." + k] = buf;
  }
  if (noise.kind != NoiseKind::none) {
    meta["noise"] = noise.kind == NoiseKind::additive ? "additive" : "proportional";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", noise.sigma);
    meta["noise_sigma"] = buf;
  }
  return Trace(std::vector<double>(grid.begin(), grid.end()), std::move(re), std::move(im),
               info.kind, info.x_unit, std::move(meta));
}

}  // namespace omx::extract
