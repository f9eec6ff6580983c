// SPDX-License-Identifier: Apache-2.0
#include "omx/cli/units.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "omx/constants.hpp"

namespace omx::cli {

namespace {

struct Unit {
  std::string_view name;
  double scale;
};

const std::vector<Unit>& units_for(Dimension d) {
  static const std::vector<Unit> frequency = {
      {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}, {"THz", 1e12}};
  static const std::vector<Unit> power = {{"W", 1.0},    {"mW", 1e-3},  {"uW", 1e-6},
                                          {"\xC2\xB5W", 1e-6}, {"nW", 1e-9}, {"pW", 1e-12},
                                          {"fW", 1e-15}};
  static const std::vector<Unit> length = {{"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}};
  static const std::vector<Unit> impedance = {{"ohm", 1.0}, {"Ohm", 1.0}, {"\xCE\xA9", 1.0},
                                              {"kohm", 1e3}};
  static const std::vector<Unit> voltage = {{"V", 1.0}, {"mV", 1e-3}, {"uV", 1e-6}};
  static const std::vector<Unit> energy = {{"J", 1.0},    {"mJ", 1e-3},  {"uJ", 1e-6},
                                           {"nJ", 1e-9},  {"pJ", 1e-12}, {"fJ", 1e-15},
                                           {"aJ", 1e-18}};
  static const std::vector<Unit> psd = {{"W/Hz", 1.0}, {"mW/Hz", 1e-3}};
  switch (d) {
    case Dimension::frequency: return frequency;
    case Dimension::power: return power;
    case Dimension::length: return length;
    case Dimension::impedance: return impedance;
    case Dimension::voltage: return voltage;
    case Dimension::energy: return energy;
    case Dimension::psd: return psd;
  }
  return frequency;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

const char* to_string(Dimension d) noexcept {
  switch (d) {
    case Dimension::frequency: return "frequency";
    case Dimension::power: return "power";
    case Dimension::length: return "length";
    case Dimension::impedance: return "impedance";
    case Dimension::voltage: return "voltage";
    case Dimension::energy: return "energy";
    case Dimension::psd: return "power spectral density";
  }
  return "?";
}

double parse_quantity(std::string_view text, Dimension dim) {
  const std::string_view s = trim(text);
  double value = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), value);
  if (ec != std::errc{} || ptr == first) {
    throw std::invalid_argument("expected '<number> <unit>', got '" + std::string(s) + "'");
  }
  if (!std::isfinite(value)) throw std::invalid_argument("value is not finite");
  const std::string_view unit = trim(std::string_view(ptr, static_cast<std::size_t>(s.data() + s.size() - ptr)));
  if (unit.empty()) {
    throw std::invalid_argument("missing unit in '" + std::string(s) + "' (a " +
                                to_string(dim) + " is expected)");
  }
  if (dim == Dimension::power && unit == "dBm") return dbm_to_watt(value);
  if (dim == Dimension::psd && unit == "dBm/Hz") return dbm_to_watt(value);
  for (const auto& u : units_for(dim)) {
    if (unit == u.name) return value * u.scale;
  }
  throw std::invalid_argument("unit '" + std::string(unit) + "' is not a " + to_string(dim) +
                              " unit");
}

}  // namespace omx::cli
