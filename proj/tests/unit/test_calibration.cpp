// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "omx/calibration.hpp"
#include "omx/constants.hpp"
#include "omx/core_model.hpp"
#include "omx/errors.hpp"
#include "omx/extraction.hpp"

using namespace omx;
using namespace omx::calib;

namespace {

const double kOmegaMu = angular(1.85e9);
const double kOmegaC = omega_from_wavelength(1550e-9);
const ChainParams kChain{0.575, 0.636, 50.0};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

Trace filter_scan(double ratio, double offset_v = 0.0, double noise = 2e-4, std::uint64_t seed = 1) {
  extract::ModelSpec m{"filter_scan",
                       {{"pump_v", 2.0}, {"ratio", ratio}, {"dark_v", 0.01 + offset_v},
                        {"center", 5.0}, {"width", 0.02}, {"offset", 1.5},
                        {"artifact_v", 0.06}, {"artifact_offset", 0.04}}};
  return extract::synthesize_trace(m, linspace(0.0, 10.0, 4001),
                                   {extract::NoiseKind::additive, noise}, seed);
}

}  // namespace

TEST(MicrowaveInputFlux, Examples) {
  EXPECT_EQ(microwave_input_flux(0.0, kOmegaMu, kChain), 0.0);
  const ChainParams ideal{1.0, 1.0, 50.0};
  EXPECT_NEAR(microwave_input_flux(kHbar * kOmegaMu, kOmegaMu, ideal), 1.0, 1e-12);
  EXPECT_NEAR(microwave_input_flux(1e-6, kOmegaMu, kChain), 4.69e17, 0.005e17);
  EXPECT_THROW(microwave_input_flux(-1e-6, kOmegaMu, kChain), DomainError);
}

TEST(DetectionGain, Examples) {
  EXPECT_DOUBLE_EQ(detection_gain(1e-6, 1e-6, 1.0).gain, 1.0);
  EXPECT_NEAR(detection_gain(1e-6, 1e-6, 0.636).gain, 0.636, 1e-15);
  EXPECT_THROW(detection_gain(0.0, 1e-6, 1.0), DomainError);
  EXPECT_THROW(detection_gain(1e-6, -1e-6, 1.0), DomainError);
}

TEST(DetectionGain, ChainRoundTrip) {
  // Optical flux through the fiber, power meter and detector, and back.
  const double flux = 3.7e13;
  const double p_fiber = flux * kHbar * kOmegaC;
  const auto g = detection_gain(2e-9, 150e-9, kChain.eta_out);
  const double p_analyzer = g.gain * p_fiber;
  EXPECT_NEAR(optical_output_flux(p_analyzer, g, kOmegaC), flux, 1e-12 * flux);
}

TEST(OeEfficiency, IdentityChainGivesOne) {
  const ChainParams ideal{1.0, 1.0, 50.0};
  const double flux_in = microwave_input_flux(1e-6, kOmegaMu, ideal);
  const auto g = detection_gain(1e-9, 1e-9, 1.0);
  const double p_out = flux_in * kHbar * kOmegaC * g.gain;
  EXPECT_NEAR(oe_efficiency(p_out, g, kOmegaC, flux_in), 1.0, 1e-12);
}

TEST(OeEfficiency, LowPowerRawSet) {
  const double flux_in = microwave_input_flux(1e-6, kOmegaMu, kChain);
  const auto g = detection_gain(2e-9, 150e-9, kChain.eta_out);
  EXPECT_NEAR(oe_efficiency(5.6076e-9, g, kOmegaC, flux_in), 1.1e-5, 0.01e-5);
}

TEST(OeEfficiency, HalvingGainDoublesEfficiency) {
  const double flux_in = microwave_input_flux(1e-6, kOmegaMu, kChain);
  const DetectionGain g{0.01}, half{0.005};
  const double a = oe_efficiency(5e-9, g, kOmegaC, flux_in);
  const double b = oe_efficiency(5e-9, half, kOmegaC, flux_in);
  EXPECT_NEAR(b, 2.0 * a, 1e-15 * b);
}

TEST(EoEfficiency, IdentityChainGivesOne) {
  const ChainParams ideal{1.0, 1.0, 50.0};
  const double r = 0.01, p_pump = 1e-6;
  const double flux_in = optical_input_flux(p_pump, r, kOmegaC);
  const double p_eom = flux_in * kHbar * kOmegaMu;
  EXPECT_NEAR(eo_efficiency(1.0, p_eom, ideal, r, p_pump, kOmegaC, kOmegaMu), 1.0, 1e-12);
}

TEST(EoEfficiency, LowPowerRawSet) {
  EXPECT_NEAR(eo_efficiency(1.0, 1.3488e-17, kChain, 0.075, 3e-6, kOmegaC, kOmegaMu), 1.09e-5,
              0.005e-5);
}

TEST(EoEfficiency, RejectsBadRatio) {
  EXPECT_THROW(eo_efficiency(1.0, 1e-17, kChain, 0.0, 3e-6, kOmegaC, kOmegaMu), DomainError);
  EXPECT_THROW(eo_efficiency(1.0, 1e-17, kChain, 1.0, 3e-6, kOmegaC, kOmegaMu), DomainError);
}

TEST(Calibration, BidirectionalFromSameDevice) {
  model::DeviceParams d;
  d.cavity = {kOmegaC, angular(1210e6), angular(800e6)};
  d.mech.omega_m = kOmegaMu;
  d.mech.gamma = angular(1.93e6);
  d.mech.gamma_mu = angular(1.9e3);
  d.g0 = angular(84e3);
  const auto pump = model::PumpState::from_photons(d, kOmegaMu, 800.0);
  const double t_oe = std::norm(model::s_oe(d, pump, kOmegaMu));
  const double t_eo = std::norm(model::s_eo(d, pump, kOmegaMu));

  // Microwave in, optical out.
  const double p_vna = 1e-6;
  const double flux_mu = microwave_input_flux(p_vna, kOmegaMu, kChain);
  const auto g = detection_gain(2e-9, 150e-9, kChain.eta_out);
  const double p_out_mu = flux_mu * t_oe * g.gain * kHbar * kOmegaC;
  const double eta_oe = oe_efficiency(p_out_mu, g, kOmegaC, flux_mu);

  // Optical in, microwave out.
  const double r = 0.0141, p_pump = 3.3e-6;
  const double flux_o = optical_input_flux(p_pump, r, kOmegaC);
  const double p_eom = 1e-3;
  const double s21_sq = flux_o * t_eo * kChain.eta_cable * kHbar * kOmegaMu / p_eom;
  const double eta_eo = eo_efficiency(s21_sq, p_eom, kChain, r, p_pump, kOmegaC, kOmegaMu);

  EXPECT_NEAR(eta_oe, t_oe, 1e-12 * t_oe);
  EXPECT_NEAR(eta_eo, eta_oe, 1e-12 * eta_oe);
}

TEST(Calibration, PowerScalingLeavesEfficienciesUnchanged) {
  const auto eval = [](double s) {
    const double flux = microwave_input_flux(1e-6 * s, kOmegaMu, kChain);
    const auto g = detection_gain(2e-9 * s, 150e-9 * s, kChain.eta_out);
    const double oe = oe_efficiency(5.6076e-9 * s, g, kOmegaC, flux);
    const double eo = eo_efficiency(4.46e-16, 6.3e-3 * s, kChain, 0.0141, 3.3e-6 * s, kOmegaC,
                                    kOmegaMu);
    return std::pair{oe, eo};
  };
  const auto base = eval(1.0);
  for (double s : {1e-3, 0.5, 7.0, 1e4}) {
    const auto v = eval(s);
    EXPECT_NEAR(v.first, base.first, 1e-13 * base.first);
    EXPECT_NEAR(v.second, base.second, 1e-13 * base.second);
  }
}

TEST(SidebandRatio, HighDriveScan) {
  const auto r = sideband_ratio(filter_scan(0.075));
  EXPECT_NEAR(r.ratio, 0.075, 0.002);
  EXPECT_NEAR(r.pump_x, 5.0, 0.01);
  EXPECT_NEAR(std::abs(r.sideband_x - 5.0), 1.5, 0.01);
  EXPECT_EQ(r.sideband_ratios.size(), 2u);
}

TEST(SidebandRatio, LowDriveScan) {
  const auto r = sideband_ratio(filter_scan(0.0141));
  EXPECT_NEAR(r.ratio, 0.0141, 0.0008);
}

TEST(SidebandRatio, ArtifactNextToPumpIsExcluded) {
  const auto r = sideband_ratio(filter_scan(0.0141));
  for (double v : r.sideband_ratios) EXPECT_LT(v, 0.02);
}

TEST(SidebandRatio, ZeroSidebandRejected) {
  extract::ModelSpec m{"filter_scan",
                       {{"pump_v", 2.0}, {"ratio", 0.0}, {"dark_v", 0.01}, {"center", 5.0},
                        {"width", 0.02}, {"offset", 1.5}}};
  const auto t = extract::synthesize_trace(m, linspace(0.0, 10.0, 4001),
                                           {extract::NoiseKind::additive, 2e-4}, 3);
  EXPECT_THROW(sideband_ratio(t), FitRejected);
}

TEST(SidebandRatio, InvariantUnderConstantOffset) {
  // Same noise realisation, shifted by 0.3 V.
  const auto a = sideband_ratio(filter_scan(0.075, 0.0, 2e-4, 5));
  const auto b = sideband_ratio(filter_scan(0.075, 0.3, 2e-4, 5));
  EXPECT_NEAR(b.ratio, a.ratio, 1e-9);
  EXPECT_NEAR(b.dark - a.dark, 0.3, 1e-9);
}

TEST(SidebandRatio, ShippedScan) {
  const auto scan = read_csv(std::filesystem::path(OMX_DATA_DIR) / "calibration/filter_scan.csv");
  EXPECT_NEAR(sideband_ratio(scan).ratio, 0.075, 0.002);
}

TEST(IntegratePsd, FlatSpectrum) {
  const double s0 = 3.2e-21;
  const auto t = Trace::real(linspace(0.0, 100.0, 101), std::vector<double>(101, s0),
                             TraceKind::psd);
  EXPECT_NEAR(integrate_psd(t, 50.0, 2.5), 4 * 2.5 * s0, 1e-12 * s0);
  // Band edges between samples.
  EXPECT_NEAR(integrate_psd(t, 50.3, 1.7), 4 * 1.7 * s0, 1e-12 * s0);
}

TEST(IntegratePsd, NarrowToneIndependentOfBandwidth) {
  const extract::ModelSpec m{"psd_tone",
                             {{"floor", 0.0}, {"tone_w", 1e-15}, {"tone_f", 1000.0},
                              {"tone_width", 0.2}}};
  const auto t = extract::synthesize_trace(m, linspace(980.0, 1020.0, 4001));
  for (double bw : {1.0, 2.0, 4.0}) EXPECT_NEAR(integrate_psd(t, 1000.0, bw), 1e-15, 1e-20) << bw;
}

TEST(IntegratePsd, NoiseFloorOverFourHertz) {
  const double floor = dbm_to_watt(-155.0);  // W/Hz
  const auto t = Trace::real(linspace(0.0, 20.0, 201), std::vector<double>(201, floor),
                             TraceKind::psd);
  EXPECT_NEAR(integrate_psd(t, 10.0, 1.0), std::pow(10.0, -15.5) * 4e-3, 1e-12 * floor);
}

TEST(IntegratePsd, BandOutsideTraceRejected) {
  const auto t = Trace::real(linspace(0.0, 10.0, 11), std::vector<double>(11, 1.0), TraceKind::psd);
  EXPECT_THROW(integrate_psd(t, 9.0, 1.0), DomainError);
  EXPECT_THROW(integrate_psd(t, 1.0, 1.0), DomainError);
}
