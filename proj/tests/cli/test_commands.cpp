// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "omx/cli/commands.hpp"
#include "omx/constants.hpp"
#include "omx/extraction.hpp"
#include "omx/fit_result.hpp"

namespace fs = std::filesystem;
using omx::cli::run_cli;

namespace {

const fs::path kData = OMX_DATA_DIR;

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("omx_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "omx");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);
  return run_cli(static_cast<int>(args.size()), argv.data());
}

int run_config(const std::string& cmd, const fs::path& config, const fs::path& out) {
  return run({cmd, "--config", config.string(), "--out", out.string()});
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& text) {
  const auto p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(OMX_BINARY) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct Shipped {
  const char* command;
  const char* config;
};

const Shipped kShipped[] = {
    {"model", "model_reference.json"},   {"aom", "aom_reference.json"},
    {"bitcost", "bitcost_sweep.json"},   {"fit", "fit_samples.json"},
    {"calibrate", "calibrate_low_power.json"}, {"calibrate", "calibrate_vna.json"},
    {"table", "table.json"},             {"synth", "synth_samples.json"},
    {"synth", "synth_calibration.json"},
};

const char* kDevice = R"("device": {
    "wavelength": "1550 nm", "kappa": "1210 MHz", "kappa_e": "800 MHz",
    "omega_m": "1.85 GHz", "gamma": "1.93 MHz", "gamma_mu": "1.9 kHz", "g0": "84 kHz",
    "eta_oc": 0.65 })";

}  // namespace

TEST(Cli, ShippedConfigsRunAndAreDeterministic) {
  for (const auto& s : kShipped) {
    const auto a = scratch(std::string("a_") + s.config);
    const auto b = scratch(std::string("b_") + s.config);
    ASSERT_EQ(run_config(s.command, kData / "configs" / s.config, a), 0) << s.config;
    ASSERT_EQ(run_config(s.command, kData / "configs" / s.config, b), 0) << s.config;
    EXPECT_TRUE(fs::exists(a / "result.json")) << s.config;
    EXPECT_TRUE(fs::exists(a / "summary.txt")) << s.config;
    for (const auto& e : fs::directory_iterator(a)) {
      const auto other = b / e.path().filename();
      ASSERT_TRUE(fs::exists(other)) << other;
      EXPECT_EQ(slurp(e.path()), slurp(other)) << s.config << " " << e.path().filename();
    }
  }
}

TEST(Cli, SynthRegeneratesShippedSamples) {
  for (const auto& [config, dir] : {std::pair{"synth_samples.json", "samples"},
                                    std::pair{"synth_calibration.json", "calibration"}}) {
    const auto out = scratch(std::string("regen_") + dir);
    ASSERT_EQ(run_config("synth", kData / "configs" / config, out), 0);
    for (const auto& e : fs::directory_iterator(kData / dir)) {
      if (e.path().extension() != ".csv") continue;
      EXPECT_EQ(slurp(e.path()), slurp(out / e.path().filename())) << e.path();
    }
  }
}

TEST(Cli, JsonOutputsReingest) {
  const auto out = scratch("reingest");
  ASSERT_EQ(run_config("fit", kData / "configs" / "fit_samples.json", out), 0);
  const auto doc = nlohmann::json::parse(slurp(out / "result.json"));
  for (const auto& f : doc.at("fits")) {
    const auto r = f.at("result").get<omx::FitResult>();
    EXPECT_EQ(nlohmann::json(r), f.at("result")) << f.at("name");
  }
  for (const auto& s : kShipped) {
    const auto d = scratch(std::string("re_") + s.config);
    ASSERT_EQ(run_config(s.command, kData / "configs" / s.config, d), 0);
    const auto j = nlohmann::json::parse(slurp(d / "result.json"));
    EXPECT_EQ(nlohmann::json::parse(j.dump()), j) << s.config;
  }
}

TEST(Cli, FitResultsMatchGeneratingValues) {
  const auto out = scratch("fit_values");
  ASSERT_EQ(run_config("fit", kData / "configs" / "fit_samples.json", out), 0);
  const auto doc = nlohmann::json::parse(slurp(out / "result.json"));
  std::map<std::string, omx::FitResult> fits;
  for (const auto& f : doc.at("fits")) fits[f.at("name")] = f.at("result").get<omx::FitResult>();
  auto near = [](double a, double b, double tol) { return std::abs(a / b - 1.0) < tol; };
  EXPECT_TRUE(near(fits["resonance"].value("kappa"), omx::kTwoPi * 1210e6, 0.01));
  EXPECT_TRUE(near(fits["sideband"].value("kappa_e"), omx::kTwoPi * 800e6, 0.005));
  EXPECT_TRUE(near(fits["aom_h1747"].value("h"), 1.747, 0.01));
  EXPECT_TRUE(near(fits["aom_h4812"].value("h"), 4.812, 0.01));
  EXPECT_TRUE(near(fits["efficiency"].value("eta_e"), 4.24e-4, 0.02));
  EXPECT_TRUE(near(fits["efficiency"].value("c0"), 1.2e-5, 0.02));
}

TEST(Cli, UsageErrorsExitTwo) {
  const auto out = scratch("usage");
  const auto cfg = kData / "configs" / "model_reference.json";
  EXPECT_EQ(run({"frobnicate", "--config", cfg.string()}), 2);
  EXPECT_EQ(run({"model"}), 2);
  EXPECT_EQ(run({"model", "--config", cfg.string(), "--bogus"}), 2);
  EXPECT_EQ(run({"model", "--config", (out / "missing.json").string()}), 2);
}

TEST(Cli, ConfigErrorsExitTwo) {
  const auto dir = scratch("config_errors");
  // Empty sweep grid.
  const auto empty_grid = write_config(dir, "empty.json", std::string("{") + kDevice + R"(,
    "pump": { "side": "blue", "n_c": 100 },
    "efficiency_sweep": { "eta_e": 4.24e-4, "c0": 1.2e-5,
                          "n_c": { "start": 10, "stop": 100, "points": 0 } } })");
  EXPECT_EQ(run_config("model", empty_grid, dir / "o1"), 2);
  // Unit missing on a dimensional field.
  const auto bare = write_config(dir, "bare.json", R"({ "drive": { "power": 0.58 } })");
  EXPECT_EQ(run_config("aom", bare, dir / "o2"), 2);
  // Unknown key.
  const auto typo = write_config(dir, "typo.json", std::string("{") + kDevice + R"(,
    "pump": { "side": "red", "n_c": 100 }, "pmup": 1 })");
  EXPECT_EQ(run_config("model", typo, dir / "o3"), 2);
  // Malformed JSON.
  const auto broken = write_config(dir, "broken.json", "{ \"pump\": ");
  EXPECT_EQ(run_config("model", broken, dir / "o4"), 2);
}

TEST(Cli, RejectedFitExitsThree) {
  const auto dir = scratch("rejected");
  // Resonance parked far outside the scan; only noise remains.
  std::vector<double> grid(401);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 193.408e12 + 3e7 * static_cast<double>(i);
  const omx::extract::ModelSpec far{"optical_resonance",
                                    {{"f_c", 194.4e12}, {"kappa", 1210e6}, {"kappa_e", 800e6}}};
  omx::write_csv(dir / "flat.csv", omx::extract::synthesize_trace(
                                       far, grid, {omx::extract::NoiseKind::additive, 0.01}, 4));
  const auto cfg = write_config(dir, "fit.json", R"({ "fits": [
    { "name": "flat", "kind": "optical_resonance", "trace": "flat.csv" } ] })");
  EXPECT_EQ(run_config("fit", cfg, dir / "out"), 3);
  // The report is still written.
  EXPECT_TRUE(fs::exists(dir / "out" / "result.json"));
}

TEST(Cli, DomainErrorExitsFour) {
  const auto dir = scratch("domain");
  // kappa_e larger than kappa.
  const auto cfg = write_config(dir, "bad_device.json", R"({ "device": {
    "wavelength": "1550 nm", "kappa": "800 MHz", "kappa_e": "1210 MHz",
    "omega_m": "1.85 GHz", "gamma": "1.93 MHz", "gamma_mu": "1.9 kHz", "g0": "84 kHz",
    "eta_oc": 0.65 }, "pump": { "side": "red", "n_c": 100 } })");
  EXPECT_EQ(run_config("model", cfg, dir / "out"), 4);
  // Blue pump beyond threshold.
  const auto lasing = write_config(dir, "lasing.json", std::string("{") + kDevice + R"(,
    "pump": { "side": "blue", "n_c": 1e6 } })");
  EXPECT_EQ(run_config("model", lasing, dir / "out2"), 4);
}

TEST(Cli, BinaryExitCodes) {
  const auto out = scratch("binary");
  const auto cfg = (kData / "configs" / "bitcost_sweep.json").string();
  EXPECT_EQ(run_binary("bitcost --config " + cfg + " --out " + out.string()), 0);
  EXPECT_EQ(run_binary("nonsense --config " + cfg), 2);
  EXPECT_EQ(run_binary("bitcost"), 2);
  EXPECT_EQ(run_binary("--help"), 0);
}

TEST(Cli, SeedOverrideChangesNoise) {
  const auto a = scratch("seed_a");
  const auto b = scratch("seed_b");
  const auto cfg = (kData / "configs" / "synth_samples.json").string();
  ASSERT_EQ(run({"synth", "--config", cfg, "--out", a.string(), "--seed", "7"}), 0);
  ASSERT_EQ(run({"synth", "--config", cfg, "--out", b.string(), "--seed", "8"}), 0);
  EXPECT_NE(slurp(a / "resonance.csv"), slurp(b / "resonance.csv"));
}
