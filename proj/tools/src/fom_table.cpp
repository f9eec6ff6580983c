// SPDX-License-Identifier: Apache-2.0
#include "omx/cli/fom_table.hpp"

#include <cmath>

#include "omx/bitcost.hpp"
#include "omx/cli/config.hpp"
#include "omx/cli/output.hpp"
#include "omx/constants.hpp"
#include "omx/core_model.hpp"

namespace omx::cli {

namespace {

bool contains(const ConfigNode& node, const std::string& key) {
  for (const auto& k : node.keys()) {
    if (k == key) return true;
  }
  return false;
}

// A field written as null, or {"value": <number|"quantity">, "provenance": ...}.
Annotated read_annotated(const ConfigNode& node, const std::string& key,
                         std::optional<Dimension> dim, bool required) {
  Annotated a;
  if (!contains(node, key)) {
    if (required) node.fail(key, "required field is missing (write null when unknown)");
    return a;
  }
  const auto child = node.optional_child(key);
  if (!child) {
    a.provenance = "missing";
    return a;
  }
  a.provenance = child->string("provenance");
  if (a.provenance != "reported" && a.provenance != "assumed" && a.provenance != "derived") {
    child->fail("provenance", "expected \"reported\", \"assumed\" or \"derived\"");
  }
  a.approximate = child->boolean_or("approximate", false);
  a.note = child->string_or("note", "");
  if (child->has("value")) {
    if (dim) {
      double v = child->quantity("value", *dim);
      if (*dim == Dimension::frequency) v = angular(v);
      a.value = v;
    } else {
      a.value = child->number("value");
    }
  } else {
    child->optional_number("value");  // mark null as read
  }
  child->finish();
  return a;
}

bool known(const Annotated& a) { return a.value.has_value(); }

std::string missing_list(std::initializer_list<std::pair<const char*, const Annotated*>> need) {
  std::string out;
  for (const auto& [name, a] : need) {
    if (!known(*a)) out += (out.empty() ? "" : ", ") + std::string(name);
  }
  return out;
}

}  // namespace

std::optional<double> DeviceRecord::reported_value(const std::string& name) const {
  for (const auto& [k, a] : reported) {
    if (k == name) return a.value;
  }
  return std::nullopt;
}

const FomCell& FomRow::cell(const std::string& name) const {
  for (const auto& c : cells) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no figure-of-merit cell named " + name);
}

std::vector<DeviceRecord> parse_records(const nlohmann::json& db) {
  if (!db.is_object()) throw ConfigError("$: expected an object with a records array");
  const ConfigNode root(db, "$");
  const auto nodes = root.array("records");
  root.finish();

  static const std::vector<std::pair<std::string, std::optional<Dimension>>> reported_fields = {
      {"C0", std::nullopt},     {"eta0", std::nullopt},   {"eta_int", std::nullopt},
      {"eta_eo", std::nullopt}, {"eta_oe", std::nullopt}, {"eta_blue", std::nullopt},
      {"E_bit", Dimension::energy}, {"E_qubit", Dimension::energy}, {"P_pump", Dimension::power}};

  std::vector<DeviceRecord> out;
  for (const auto& n : nodes) {
    DeviceRecord r;
    r.label = n.string("label");
    r.platform = n.string_or("platform", "");
    n.string_or("reference", "");
    const auto in = n.child("inputs");
    const auto f = Dimension::frequency;
    r.g0 = read_annotated(in, "g0", f, true);
    r.kappa = read_annotated(in, "kappa", f, true);
    r.gamma = read_annotated(in, "gamma", f, true);
    r.omega_m = read_annotated(in, "omega_m", f, true);
    r.eta_o = read_annotated(in, "eta_o", std::nullopt, true);
    r.eta_m = read_annotated(in, "eta_m", std::nullopt, true);
    r.eta_oc = read_annotated(in, "eta_oc", std::nullopt, true);
    r.wavelength = read_annotated(in, "wavelength", Dimension::length, true);
    r.n_c = read_annotated(in, "n_c", std::nullopt, true);
    in.finish();
    if (const auto eb = n.optional_child("e_bit_inputs")) {
      r.e_bit_g0 = read_annotated(*eb, "g0", f, false);
      r.e_bit_eta_m = read_annotated(*eb, "eta_m", std::nullopt, false);
      eb->finish();
    }
    if (const auto rep = n.optional_child("reported")) {
      for (const auto& [name, dim] : reported_fields) {
        auto a = read_annotated(*rep, name, dim, false);
        if (!a.provenance.empty()) r.reported.emplace_back(name, std::move(a));
      }
      rep->finish();
    }
    n.finish();
    for (const auto* a : {&r.g0, &r.kappa, &r.gamma, &r.omega_m, &r.wavelength}) {
      if (a->value && !(*a->value > 0.0)) in.fail("*", r.label + ": rates must be positive");
    }
    for (const auto* a : {&r.eta_o, &r.eta_m, &r.eta_oc}) {
      if (a->value && !(*a->value > 0.0 && *a->value <= 1.0)) {
        in.fail("*", r.label + ": efficiencies must lie in (0, 1]");
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<FomRow> compute_fom_table(const std::vector<DeviceRecord>& records, double tolerance) {
  std::vector<FomRow> rows;
  for (const auto& r : records) {
    FomRow row;
    row.label = r.label;
    row.platform = r.platform;
    auto add = [&](const std::string& name, std::optional<double> v, std::string note) {
      FomCell c;
      c.name = name;
      c.computed = v;
      c.reported = r.reported_value(name);
      c.note = std::move(note);
      if (c.computed && c.reported && *c.reported != 0.0) {
        c.rel_deviation = *c.computed / *c.reported - 1.0;
        if (std::abs(*c.rel_deviation) > tolerance) {
          row.flags.push_back(name + ": deviates from the reported value by " +
                              std::to_string(std::lround(100.0 * *c.rel_deviation)) + "%");
        }
      }
      row.cells.push_back(std::move(c));
    };
    auto insufficient = [&](const std::string& name, const std::string& missing) {
      row.flags.push_back(name + ": insufficient inputs (missing " + missing + ")");
      add(name, std::nullopt, "missing " + missing);
    };

    std::optional<double> c0;
    if (const auto m = missing_list({{"g0", &r.g0}, {"kappa", &r.kappa}, {"gamma", &r.gamma}});
        m.empty()) {
      c0 = 4.0 * *r.g0.value * *r.g0.value / (*r.kappa.value * *r.gamma.value);
      add("C0", c0, "");
    } else {
      insufficient("C0", m);
    }

    if (c0 && known(r.eta_o) && known(r.eta_m)) {
      add("eta0", 4.0 * *r.eta_o.value * *r.eta_m.value * *c0, "");
    } else {
      auto m = missing_list({{"eta_o", &r.eta_o}, {"eta_m", &r.eta_m}});
      if (!c0) m += (m.empty() ? "" : ", ") + std::string("C0");
      insufficient("eta0", m);
    }

    if (c0 && known(r.n_c)) {
      const double c = *c0 * *r.n_c.value;
      add("eta_int", 4.0 * c / ((1.0 + c) * (1.0 + c)), "n_c " + fmt(*r.n_c.value));
    } else {
      // Not every row gives an operating point; only note the gap.
      add("eta_int", std::nullopt, known(r.n_c) ? "missing C0" : "no n_c given");
    }

    {
      const Annotated& g0 = known(r.e_bit_g0) ? r.e_bit_g0 : r.g0;
      const Annotated& eta_m = known(r.e_bit_eta_m) ? r.e_bit_eta_m : r.eta_m;
      const auto m = missing_list(
          {{"omega_m", &r.omega_m}, {"kappa", &r.kappa}, {"g0", &g0}, {"eta_m", &eta_m}});
      if (m.empty()) {
        const double w_m = *r.omega_m.value, kappa = *r.kappa.value;
        const bool slow = kappa > w_m;
        const double e = slow ? bitcost::e_bit_slow(w_m, kappa, *g0.value, *eta_m.value)
                              : bitcost::e_bit_fast(w_m, *g0.value, *eta_m.value);
        std::string note = slow ? "slow limit (kappa > omega_m)" : "fast limit (kappa < omega_m)";
        if (&g0 == &r.e_bit_g0 || &eta_m == &r.e_bit_eta_m) note += ", separate E_bit inputs";
        add("E_bit", e, note);
      } else {
        insufficient("E_bit", m);
      }
    }

    if (const auto m = missing_list({{"wavelength", &r.wavelength},
                                     {"kappa", &r.kappa},
                                     {"g0", &r.g0},
                                     {"eta_o", &r.eta_o},
                                     {"eta_m", &r.eta_m}});
        m.empty()) {
      model::DeviceParams dev;
      dev.cavity.omega_c = omega_from_wavelength(*r.wavelength.value);
      dev.cavity.kappa = *r.kappa.value;
      dev.cavity.kappa_e = *r.eta_o.value * *r.kappa.value;
      dev.mech.gamma = 1.0;
      dev.mech.gamma_mu = *r.eta_m.value;
      dev.g0 = *r.g0.value;
      add("E_qubit", model::energy_per_qubit(dev),
          r.wavelength.provenance == "assumed" ? "wavelength assumed" : "");
    } else {
      insufficient("E_qubit", m);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const std::vector<FomRow>& rows) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json cells = nlohmann::json::object();
    for (const auto& c : r.cells) {
      cells[c.name] = {{"computed", opt(c.computed)},
                       {"reported", opt(c.reported)},
                       {"rel_deviation", opt(c.rel_deviation)},
                       {"note", c.note}};
    }
    out.push_back(
        {{"label", r.label}, {"platform", r.platform}, {"cells", cells}, {"flags", r.flags}});
  }
  return out;
}

}  // namespace omx::cli
