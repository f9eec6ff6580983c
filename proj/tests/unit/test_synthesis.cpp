// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "omx/constants.hpp"
#include "omx/core_model.hpp"
#include "omx/errors.hpp"
#include "omx/extraction.hpp"

using namespace omx;
using namespace omx::extract;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

const ModelSpec kResonance{"optical_resonance",
                           {{"f_c", 193.414e12}, {"kappa", 1210e6}, {"kappa_e", 800e6}}};

}  // namespace

TEST(Synthesis, ZeroNoiseReproducesModel) {
  const auto grid = linspace(193.408e12, 193.420e12, 301);
  const auto t = synthesize_trace(kResonance, grid, {NoiseKind::additive, 0.0}, 1);
  std::vector<double> re, im;
  evaluate_model(kResonance, grid, re, im);
  EXPECT_EQ(t.y(), re);
  EXPECT_TRUE(im.empty());
}

TEST(Synthesis, SidebandModelMatchesCoreModel) {
  const ModelSpec m{"sideband_response",
                    {{"delta", -1.85e9}, {"kappa", 1210e6}, {"kappa_e", 800e6},
                     {"g_eff", 1.45e6}, {"omega_m", 1.85e9}, {"gamma", 1.93e6}}};
  const auto grid = linspace(1.8e9, 1.9e9, 51);
  const auto t = synthesize_trace(m, grid);

  model::DeviceParams d;
  d.cavity = {1e15, angular(1210e6), angular(800e6)};
  d.mech.omega_m = angular(1.85e9);
  d.mech.gamma = angular(1.93e6);
  d.mech.gamma_mu = angular(1e3);
  d.g0 = angular(1e3);
  const double n_c = std::pow(1.45e6 / 1e3, 2);
  const auto pump = model::PumpState::from_photons(d, angular(-1.85e9), n_c);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto s = model::s_oo(d, pump, angular(grid[i]));
    EXPECT_NEAR(t.y()[i], s.real(), 1e-9);
    EXPECT_NEAR(t.y_im()[i], s.imag(), 1e-9);
  }
}

TEST(Synthesis, FixedSeedIsBitIdentical) {
  const auto grid = linspace(193.408e12, 193.420e12, 301);
  const auto a = synthesize_trace(kResonance, grid, {NoiseKind::additive, 0.01}, 42);
  const auto b = synthesize_trace(kResonance, grid, {NoiseKind::additive, 0.01}, 42);
  const auto c = synthesize_trace(kResonance, grid, {NoiseKind::additive, 0.01}, 43);
  EXPECT_EQ(a.y(), b.y());
  EXPECT_NE(a.y(), c.y());
}

TEST(Synthesis, EmpiricalNoiseMatchesSigma) {
  const auto grid = linspace(193.408e12, 193.420e12, 10000);
  const double sigma = 0.01;
  const auto t = synthesize_trace(kResonance, grid, {NoiseKind::additive, sigma}, 7);
  std::vector<double> clean, im;
  evaluate_model(kResonance, grid, clean, im);
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    const double d = t.y()[i] - clean[i];
    sum += d;
    sum2 += d * d;
  }
  const double n = static_cast<double>(clean.size());
  const double sd = std::sqrt(sum2 / n - (sum / n) * (sum / n));
  EXPECT_LT(std::abs(sd / sigma - 1.0), 0.1);
}

TEST(Synthesis, ProportionalNoiseScalesWithSignal) {
  const ModelSpec m{"efficiency_red", {{"eta_e", 4.24e-4}, {"c0", 1.2e-5}}};
  std::vector<double> grid(4000);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 10.0 + static_cast<double>(i);
  const auto t = synthesize_trace(m, grid, {NoiseKind::proportional, 0.02}, 9);
  std::vector<double> clean, im;
  evaluate_model(m, grid, clean, im);
  double s2 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) s2 += std::pow(t.y()[i] / clean[i] - 1.0, 2);
  EXPECT_NEAR(std::sqrt(s2 / static_cast<double>(grid.size())), 0.02, 0.002);
}

TEST(Synthesis, Errors) {
  const auto grid = linspace(0.0, 1.0, 11);
  EXPECT_THROW(synthesize_trace({"no_such_model", {}}, grid), UnknownModel);
  EXPECT_THROW(synthesize_trace({"optical_resonance", {{"f_c", 1.0}}}, grid), std::invalid_argument);
  auto extra = kResonance;
  extra.params["bogus"] = 1.0;
  EXPECT_THROW(synthesize_trace(extra, grid), std::invalid_argument);
  EXPECT_THROW(synthesize_trace({"efficiency_blue", {{"eta_e", 1e-4}, {"c0", 2.0}}}, grid),
               LasingError);
}

TEST(Synthesis, MetaRecordsProvenance) {
  const auto t = synthesize_trace(kResonance, linspace(193.41e12, 193.42e12, 11), {}, 5);
  EXPECT_EQ(t.meta().at("model"), "optical_resonance");
  EXPECT_EQ(t.meta().at("seed"), "5");
}
