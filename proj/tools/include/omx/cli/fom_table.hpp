// SPDX-License-Identifier: Apache-2.0
#pragma once

// Figure-of-merit comparison across published transducers.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace omx::cli {

/// A value with its origin: "reported" (taken from a publication), "assumed"
/// (filled in where the publication is silent), or "derived".
struct Annotated {
  std::optional<double> value;
  std::string provenance;
  bool approximate = false;
  std::string note;  ///< free text, e.g. a value the table gives only in words
};

/// One transducer. Rates are angular (rad/s). Missing inputs stay empty.
struct DeviceRecord {
  std::string label;
  std::string platform;
  Annotated g0, kappa, gamma, omega_m;
  Annotated eta_o, eta_m, eta_oc;
  Annotated wavelength;  // m
  Annotated n_c;
  /// Optional separate inputs for the energy-per-bit estimate.
  Annotated e_bit_g0, e_bit_eta_m;
  std::vector<std::pair<std::string, Annotated>> reported;  // tabulated figures of merit

  std::optional<double> reported_value(const std::string& name) const;
};

struct FomCell {
  std::string name;
  std::optional<double> computed;
  std::optional<double> reported;
  std::optional<double> rel_deviation;  // computed / reported - 1
  std::string note;
};

struct FomRow {
  std::string label;
  std::string platform;
  std::vector<FomCell> cells;  // C0, eta0, eta_int, E_bit, E_qubit
  std::vector<std::string> flags;

  const FomCell& cell(const std::string& name) const;
};

/// Parses the record database ({"records": [...]}). Every input field must be
/// present; unknown values are written as null. Throws ConfigError.
std::vector<DeviceRecord> parse_records(const nlohmann::json& db);

/// Computes C0, eta0 = 4 eta_o eta_m C0, eta_int = 4C/(1+C)^2 (needs n_c),
/// E_bit (slow or fast limit by kappa vs omega_m) and E_qubit for each record.
/// Cells whose inputs are missing stay empty and the row is flagged, as are
/// cells that deviate from the reported value by more than `tolerance`.
std::vector<FomRow> compute_fom_table(const std::vector<DeviceRecord>& records,
                                      double tolerance = 0.1);

nlohmann::json to_json(const std::vector<FomRow>& rows);

}  // namespace omx::cli
