// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "omx/cli/config.hpp"
#include "omx/cli/output.hpp"
#include "omx/core_model.hpp"

namespace omx::cli {

struct Context {
  std::filesystem::path config_dir;
  std::filesystem::path out_dir;
  std::optional<std::uint64_t> seed;

  /// Resolves a path from the config relative to the config file.
  std::filesystem::path resolve(const std::string& p) const;
};

void cmd_model(const ConfigNode& cfg, const Context& ctx);
void cmd_aom(const ConfigNode& cfg, const Context& ctx);
void cmd_bitcost(const ConfigNode& cfg, const Context& ctx);
void cmd_fit(const ConfigNode& cfg, const Context& ctx);
void cmd_calibrate(const ConfigNode& cfg, const Context& ctx);
void cmd_table(const ConfigNode& cfg, const Context& ctx);
void cmd_synth(const ConfigNode& cfg, const Context& ctx);

/// The names accepted on the command line, in help order.
const std::vector<std::string>& command_names();

/// Parses argv, runs the command and maps failures to exit codes:
/// 0 success, 2 configuration or usage error, 3 fit rejected, 4 domain error.
int run_cli(int argc, char** argv);

// Shared config readers.
model::DeviceParams read_device(const ConfigNode& node);
std::vector<double> read_grid(const ConfigNode& node, std::optional<Dimension> dim);

}  // namespace omx::cli
