// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "omx/cli/units.hpp"

namespace omx::cli {

/// Invalid or incomplete configuration. The message starts with the JSON
/// path of the offending field, or the line and column for syntax errors.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Read access to one JSON object that records which keys were consumed, so
/// that finish() can reject anything unexpected.
class ConfigNode {
 public:
  ConfigNode(const nlohmann::json& value, std::string path);

  const std::string& path() const noexcept { return path_; }
  bool has(const std::string& key) const;
  bool is_string(const std::string& key) const;
  /// Every key of the object, sorted.
  std::vector<std::string> keys() const;

  double number(const std::string& key) const;
  std::optional<double> optional_number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  /// Unit-suffixed string converted to SI; bare numbers are rejected.
  double quantity(const std::string& key, Dimension dim) const;
  std::optional<double> optional_quantity(const std::string& key, Dimension dim) const;
  long long integer(const std::string& key) const;
  long long integer_or(const std::string& key, long long fallback) const;
  std::string string(const std::string& key) const;
  std::string string_or(const std::string& key, const std::string& fallback) const;
  bool boolean_or(const std::string& key, bool fallback) const;
  std::vector<double> number_array(const std::string& key) const;

  ConfigNode child(const std::string& key) const;
  std::optional<ConfigNode> optional_child(const std::string& key) const;
  std::vector<ConfigNode> array(const std::string& key) const;

  /// Throws ConfigError naming the first key that was never read.
  void finish() const;

  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

 private:
  const nlohmann::json& at(const std::string& key) const;

  const nlohmann::json* value_;
  std::string path_;
  std::shared_ptr<std::set<std::string>> used_;
};

/// A parsed configuration file; keeps the document alive for its nodes.
class ConfigFile {
 public:
  static ConfigFile load(const std::filesystem::path& path);
  static ConfigFile parse(const std::string& text, const std::string& origin = "<config>");

  ConfigNode root() const { return ConfigNode(*doc_, "$"); }
  const std::filesystem::path& directory() const noexcept { return dir_; }
  const nlohmann::json& json() const noexcept { return *doc_; }

 private:
  std::shared_ptr<nlohmann::json> doc_;
  std::filesystem::path dir_;
};

}  // namespace omx::cli
