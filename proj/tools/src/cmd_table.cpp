// SPDX-License-Identifier: Apache-2.0
#include <iomanip>
#include <sstream>

#include "omx/cli/commands.hpp"
#include "omx/cli/fom_table.hpp"

namespace omx::cli {

void cmd_table(const ConfigNode& cfg, const Context& ctx) {
  const auto path = ctx.resolve(cfg.string("records"));
  const double tolerance = cfg.number_or("tolerance", 0.1);
  cfg.finish();
  if (!(tolerance > 0.0)) cfg.fail("tolerance", "must be positive");
  if (!std::filesystem::exists(path)) cfg.fail("records", "file not found: " + path.string());

  const auto db = ConfigFile::load(path);
  std::vector<DeviceRecord> records;
  try {
    records = parse_records(db.json());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  const auto rows = compute_fom_table(records, tolerance);

  CsvTable t({"label", "quantity", "computed", "reported", "rel_deviation", "note"});
  auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
  for (const auto& r : rows) {
    for (const auto& c : r.cells) {
      t.add({r.label, c.name, opt(c.computed), opt(c.reported), opt(c.rel_deviation), c.note});
    }
  }

  std::ostringstream s;
  s << "omx table (" << rows.size() << " records, tolerance " << fmt_sig(tolerance)
    << "), cells read computed (reported)\n\n";
  s << std::left << std::setw(26) << "label";
  const char* names[] = {"C0", "eta0", "eta_int", "E_bit", "E_qubit"};
  for (const char* n : names) s << std::setw(22) << n;
  s << "\n";
  auto cell_text = [](const FomCell& c) {
    if (!c.computed) return std::string("-");
    std::string out = fmt_sig(*c.computed, 3);
    if (c.reported) out += " (" + fmt_sig(*c.reported, 2) + ")";
    return out;
  };
  std::size_t flagged = 0;
  for (const auto& r : rows) {
    s << std::setw(26) << r.label;
    for (const char* n : names) s << std::setw(22) << cell_text(r.cell(n));
    s << "\n";
    if (!r.flags.empty()) ++flagged;
  }
  s << "\n";
  for (const auto& r : rows) {
    for (const auto& f : r.flags) s << "flag: " << r.label << ": " << f << "\n";
  }

  OutputDir out(ctx.out_dir);
  out.csv("table.csv", t);
  out.json("result.json", {{"command", "table"},
                           {"tolerance", tolerance},
                           {"flagged_rows", flagged},
                           {"rows", to_json(rows)}});
  out.text("summary.txt", s.str());
}

}  // namespace omx::cli
