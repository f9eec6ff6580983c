// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "omx/constants.hpp"
#include "omx/extraction.hpp"

using namespace omx;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace

static void BM_FitResonance(benchmark::State& state) {
  const double fc = 193.414e12;
  const auto t = extract::synthesize_trace(
      {"optical_resonance", {{"f_c", fc}, {"kappa", 1210e6}, {"kappa_e", 800e6}}},
      linspace(fc - 6e9, fc + 6e9, 801), {extract::NoiseKind::additive, 0.01}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(extract::fit_optical_resonance(t));
}
BENCHMARK(BM_FitResonance)->Unit(benchmark::kMillisecond);

static void BM_FitSideband(benchmark::State& state) {
  const auto t = extract::synthesize_trace(
      {"sideband_phase", {{"delta", -3.698e9}, {"kappa", 1203e6}, {"kappa_e", 781e6},
                          {"g_eff", 1.45e6}, {"omega_m", 1.85e9}, {"gamma", 1.93e6}}},
      linspace(2.0e9, 5.5e9, 701), {extract::NoiseKind::additive, 0.01}, 1);
  const extract::SidebandPrior prior{angular(1.45e6), angular(1.85e9), angular(1.93e6)};
  for (auto _ : state) benchmark::DoNotOptimize(extract::fit_sideband_response(t, prior));
}
BENCHMARK(BM_FitSideband)->Unit(benchmark::kMillisecond);

static void BM_FitAom(benchmark::State& state) {
  const double h = static_cast<double>(state.range(0)) / 1000.0;
  const auto t = extract::synthesize_trace(
      {"aom_spectrum", {{"kappa", 1210e6}, {"kappa_e", 800e6}, {"f_mu", 1.85e9}, {"h", h},
                        {"x_shift", 1e8}, {"x_scale", 1.05}}},
      linspace(-20e9, 20e9, 1601), {extract::NoiseKind::additive, 0.01}, 1);
  const model::OpticalCavity cavity{1.2e15, angular(1210e6), angular(800e6)};
  for (auto _ : state) benchmark::DoNotOptimize(extract::fit_aom_spectrum(t, cavity, angular(1.85e9)));
}
BENCHMARK(BM_FitAom)->Arg(1747)->Arg(4812)->Unit(benchmark::kMillisecond);

static void BM_FitEfficiency(benchmark::State& state) {
  std::vector<double> grid(25);
  for (int i = 0; i < 25; ++i) grid[i] = 10.0 * std::pow(4000.0, i / 24.0);
  const auto t = extract::synthesize_trace({"efficiency_blue", {{"eta_e", 4.24e-4}, {"c0", 1.2e-5}}},
                                           grid, {extract::NoiseKind::proportional, 0.01}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(extract::fit_efficiency_curve(t));
}
BENCHMARK(BM_FitEfficiency)->Unit(benchmark::kMicrosecond);
