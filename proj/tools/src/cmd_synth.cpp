// SPDX-License-Identifier: Apache-2.0
#include <map>
#include <set>
#include <sstream>

#include "omx/cli/commands.hpp"
#include "omx/extraction.hpp"

namespace omx::cli {

namespace {

// Dimensional synthesis parameters; anything else is a plain number.
const std::map<std::string, Dimension>& param_dimensions() {
  static const std::map<std::string, Dimension> dims = {
      {"f_c", Dimension::frequency},        {"kappa", Dimension::frequency},
      {"kappa_e", Dimension::frequency},    {"delta", Dimension::frequency},
      {"g_eff", Dimension::frequency},      {"omega_m", Dimension::frequency},
      {"gamma", Dimension::frequency},      {"g0", Dimension::frequency},
      {"f_mu", Dimension::frequency},       {"x_shift", Dimension::frequency},
      {"tone_f", Dimension::frequency},     {"tone_width", Dimension::frequency},
      {"tone_w", Dimension::power},         {"floor", Dimension::psd},
      {"pump_v", Dimension::voltage},       {"dark_v", Dimension::voltage},
      {"artifact_v", Dimension::voltage},   {"center", Dimension::voltage},
      {"width", Dimension::voltage},        {"offset", Dimension::voltage},
      {"artifact_offset", Dimension::voltage}};
  return dims;
}

// Grid axis dimension per model; none for dimensionless axes such as n_c.
std::optional<Dimension> axis_dimension(const std::string& model) {
  if (model == "backaction" || model == "efficiency_blue" || model == "efficiency_red") {
    return std::nullopt;
  }
  if (model == "filter_scan") return Dimension::voltage;
  return Dimension::frequency;
}

extract::NoiseSpec read_noise(const ConfigNode& node) {
  extract::NoiseSpec n;
  const std::string kind = node.string("kind");
  if (kind == "none") {
    n.kind = extract::NoiseKind::none;
  } else if (kind == "additive") {
    n.kind = extract::NoiseKind::additive;
  } else if (kind == "proportional") {
    n.kind = extract::NoiseKind::proportional;
  } else {
    node.fail("kind", "expected \"none\", \"additive\" or \"proportional\"");
  }
  if (n.kind != extract::NoiseKind::none) {
    n.sigma = node.number("sigma");
    if (!(n.sigma > 0.0)) node.fail("sigma", "must be positive");
  }
  node.finish();
  return n;
}

}  // namespace

void cmd_synth(const ConfigNode& cfg, const Context& ctx) {
  const auto cfg_seed = cfg.integer_or("seed", 0);
  if (cfg_seed < 0) cfg.fail("seed", "must be >= 0");
  const auto entries = cfg.array("traces");
  cfg.finish();
  if (entries.empty()) cfg.fail("traces", "needs at least one trace");
  const std::uint64_t base = ctx.seed.value_or(static_cast<std::uint64_t>(cfg_seed));

  struct Job {
    std::string name;
    extract::ModelSpec spec;
    std::vector<double> grid;
    extract::NoiseSpec noise;
  };
  std::vector<Job> jobs;
  std::set<std::string> names;
  for (const auto& e : entries) {
    Job j;
    j.name = e.string("name");
    if (j.name.empty() || j.name.find_first_of("/\\") != std::string::npos) {
      e.fail("name", "must be a plain non-empty file stem");
    }
    if (!names.insert(j.name).second) e.fail("name", "duplicate trace name '" + j.name + "'");
    j.spec.id = e.string("model");
    const auto params = e.child("params");
    for (const auto& key : params.keys()) {
      const auto it = param_dimensions().find(key);
      j.spec.params[key] = it != param_dimensions().end() ? params.quantity(key, it->second)
                                                          : params.number(key);
    }
    params.finish();
    j.grid = read_grid(e.child("grid"), axis_dimension(j.spec.id));
    if (const auto n = e.optional_child("noise")) j.noise = read_noise(*n);
    e.finish();
    jobs.push_back(std::move(j));
  }

  OutputDir out(ctx.out_dir);
  nlohmann::json list = nlohmann::json::array();
  std::ostringstream s;
  s << "omx synth (base seed " << base << ")\n";
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& j = jobs[i];
    const std::uint64_t seed = base + i;
    const auto trace = extract::synthesize_trace(j.spec, j.grid, j.noise, seed);
    out.trace(j.name + ".csv", trace);
    list.push_back({{"name", j.name},
                    {"model", j.spec.id},
                    {"file", j.name + ".csv"},
                    {"points", trace.size()},
                    {"seed", seed},
                    {"params", j.spec.params}});
    s << "  " << j.name << ".csv  " << j.spec.id << ", " << trace.size() << " points, seed " << seed
      << "\n";
  }
  out.json("result.json", {{"command", "synth"}, {"base_seed", base}, {"traces", list}});
  out.text("summary.txt", s.str());
}

}  // namespace omx::cli
