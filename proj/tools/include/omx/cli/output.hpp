// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "omx/trace.hpp"

namespace omx::cli {

/// Writes `content` to `path` through a temporary file in the same directory
/// followed by a rename, so readers never see a partial file.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Compact number formatting shared by CSV and summaries (shortest round-trip).
std::string fmt(double v);
/// Human formatting with a fixed number of significant digits.
std::string fmt_sig(double v, int digits = 4);

/// Long-format CSV table: one header row, then rows of cells.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add(std::vector<std::string> row);
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path dir);

  const std::filesystem::path& path() const noexcept { return dir_; }
  void text(const std::string& name, const std::string& content) const;
  void json(const std::string& name, const nlohmann::json& value) const;
  void csv(const std::string& name, const CsvTable& table) const;
  void trace(const std::string& name, const Trace& t) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace omx::cli
