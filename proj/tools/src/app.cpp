// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "omx/cli/commands.hpp"
#include "omx/errors.hpp"

namespace omx::cli {

namespace {

using Handler = void (*)(const ConfigNode&, const Context&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"model", cmd_model},   {"aom", cmd_aom},         {"bitcost", cmd_bitcost},
      {"fit", cmd_fit},       {"calibrate", cmd_calibrate}, {"table", cmd_table},
      {"synth", cmd_synth}};
  return h;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"model", "aom",   "bitcost", "fit",
                                                 "calibrate", "table", "synth"};
  return names;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Piezo-optomechanical transducer modeling, extraction and calibration", "omx"};
  std::string command;
  std::string config;
  std::string out_dir = "omx_out";
  std::optional<std::uint64_t> seed;
  app.add_option("command", command, "One of: model aom bitcost fit calibrate table synth")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("--config", config, "Configuration file (JSON)")->required();
  app.add_option("--out", out_dir, "Output directory (created if missing)");
  app.add_option("--seed", seed, "Random seed for synthetic noise");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const auto file = ConfigFile::load(config);
    Context ctx{file.directory(), out_dir, seed};
    handlers().at(command)(file.root(), ctx);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "omx: config error: " << e.what() << "\n";
    return 2;
  } catch (const FitRejected& e) {
    std::cerr << "omx: fit rejected: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "omx: domain error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    // Unknown model ids and bad model parameters are configuration problems.
    std::cerr << "omx: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "omx: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace omx::cli
