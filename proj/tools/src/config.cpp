// SPDX-License-Identifier: Apache-2.0
#include "omx/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace omx::cli {

namespace {

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

ConfigNode::ConfigNode(const nlohmann::json& value, std::string path)
    : value_(&value), path_(std::move(path)), used_(std::make_shared<std::set<std::string>>()) {
  if (!value_->is_object()) throw ConfigError(path_ + ": expected an object");
}

bool ConfigNode::has(const std::string& key) const {
  return value_->contains(key) && !(*value_)[key].is_null();
}

bool ConfigNode::is_string(const std::string& key) const {
  return value_->contains(key) && (*value_)[key].is_string();
}

std::vector<std::string> ConfigNode::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : value_->items()) out.push_back(k);
  return out;
}

void ConfigNode::fail(const std::string& key, const std::string& what) const {
  throw ConfigError(path_ + "." + key + ": " + what);
}

const nlohmann::json& ConfigNode::at(const std::string& key) const {
  used_->insert(key);
  if (!value_->contains(key)) fail(key, "required field is missing");
  return (*value_)[key];
}

double ConfigNode::number(const std::string& key) const {
  const auto& v = at(key);
  if (!v.is_number()) fail(key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(key, "expected a finite number");
  return d;
}

std::optional<double> ConfigNode::optional_number(const std::string& key) const {
  used_->insert(key);
  if (!has(key)) return std::nullopt;
  return number(key);
}

double ConfigNode::number_or(const std::string& key, double fallback) const {
  return optional_number(key).value_or(fallback);
}

double ConfigNode::quantity(const std::string& key, Dimension dim) const {
  const auto& v = at(key);
  if (!v.is_string()) {
    fail(key, std::string("expected a ") + to_string(dim) + " with a unit, e.g. \"" +
                  (dim == Dimension::frequency ? "1210 MHz"
                   : dim == Dimension::power   ? "3.3 uW"
                   : dim == Dimension::length  ? "1550 nm"
                   : dim == Dimension::voltage ? "24 mV"
                   : dim == Dimension::energy  ? "97 fJ"
                   : dim == Dimension::psd     ? "-155 dBm/Hz"
                                               : "50 ohm") +
                  "\"");
  }
  try {
    return parse_quantity(v.get<std::string>(), dim);
  } catch (const std::invalid_argument& e) {
    fail(key, e.what());
  }
}

std::optional<double> ConfigNode::optional_quantity(const std::string& key, Dimension dim) const {
  used_->insert(key);
  if (!has(key)) return std::nullopt;
  return quantity(key, dim);
}

long long ConfigNode::integer(const std::string& key) const {
  const auto& v = at(key);
  if (!v.is_number_integer()) fail(key, "expected an integer");
  return v.get<long long>();
}

long long ConfigNode::integer_or(const std::string& key, long long fallback) const {
  used_->insert(key);
  return has(key) ? integer(key) : fallback;
}

std::string ConfigNode::string(const std::string& key) const {
  const auto& v = at(key);
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

std::string ConfigNode::string_or(const std::string& key, const std::string& fallback) const {
  used_->insert(key);
  return has(key) ? string(key) : fallback;
}

bool ConfigNode::boolean_or(const std::string& key, bool fallback) const {
  used_->insert(key);
  if (!has(key)) return fallback;
  const auto& v = at(key);
  if (!v.is_boolean()) fail(key, "expected true or false");
  return v.get<bool>();
}

std::vector<double> ConfigNode::number_array(const std::string& key) const {
  const auto& v = at(key);
  if (!v.is_array()) fail(key, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) fail(key, "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

ConfigNode ConfigNode::child(const std::string& key) const {
  const auto& v = at(key);
  if (!v.is_object()) fail(key, "expected an object");
  return ConfigNode(v, path_ + "." + key);
}

std::optional<ConfigNode> ConfigNode::optional_child(const std::string& key) const {
  used_->insert(key);
  if (!has(key)) return std::nullopt;
  return child(key);
}

std::vector<ConfigNode> ConfigNode::array(const std::string& key) const {
  const auto& v = at(key);
  if (!v.is_array()) fail(key, "expected an array of objects");
  std::vector<ConfigNode> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = path_ + "." + key + "[" + std::to_string(i) + "]";
    if (!v[i].is_object()) throw ConfigError(p + ": expected an object");
    out.emplace_back(v[i], p);
  }
  return out;
}

void ConfigNode::finish() const {
  for (const auto& [k, v] : value_->items()) {
    if (!used_->count(k)) throw ConfigError(path_ + "." + k + ": unknown field");
  }
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError(path.string() + ": cannot open configuration file");
  std::stringstream ss;
  ss << is.rdbuf();
  ConfigFile f = parse(ss.str(), path.string());
  f.dir_ = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  return f;
}

ConfigFile ConfigFile::parse(const std::string& text, const std::string& origin) {
  ConfigFile f;
  try {
    f.doc_ = std::make_shared<nlohmann::json>(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw ConfigError(origin + ": " + line_col(text, at) + ": invalid JSON");
  }
  if (!f.doc_->is_object()) throw ConfigError(origin + ": top level must be an object");
  f.dir_ = ".";
  return f;
}

}  // namespace omx::cli
