// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "omx/cli/commands.hpp"
#include "omx/constants.hpp"
#include "omx/errors.hpp"
#include "omx/extraction.hpp"

namespace omx::cli {

namespace {

using nlohmann::json;

Trace load_trace(const ConfigNode& node, const Context& ctx) {
  const std::string rel = node.string("trace");
  const auto path = ctx.resolve(rel);
  if (!std::filesystem::exists(path)) node.fail("trace", "file not found: " + path.string());
  try {
    return read_csv(path);
  } catch (const std::invalid_argument& e) {
    node.fail("trace", path.string() + ": " + e.what());
  }
}

model::PumpSide read_side(const ConfigNode& node) {
  const std::string side = node.string_or("side", "blue");
  if (side != "blue" && side != "red") node.fail("side", "expected \"blue\" or \"red\"");
  return side == "blue" ? model::PumpSide::blue : model::PumpSide::red;
}

struct FitOutcome {
  FitResult fit;
  extract::ModelSpec curve;
  json extra = json::object();
};

using FitJob = std::function<FitOutcome(const Trace&)>;

// Reads the kind-specific fields and returns the fit to run later, so that
// the whole config is validated before the first fit starts.
FitJob prepare(const std::string& kind, const ConfigNode& node) {
  if (kind == "optical_resonance") {
    const std::string b = node.string_or("branch", "over");
    if (b != "over" && b != "under") node.fail("branch", "expected \"over\" or \"under\"");
    node.finish();
    return [b](const Trace& trace) {
      FitOutcome o;
      o.fit = extract::fit_optical_resonance(
          trace, b == "over" ? extract::CouplingBranch::over : extract::CouplingBranch::under);
      const auto q = extract::quality_factors(o.fit);
      o.extra = {{"q_loaded", q.loaded}, {"q_intrinsic", q.intrinsic}, {"branch", b}};
      o.curve = {"optical_resonance",
                 {{"f_c", ordinary(o.fit.value("omega_c"))},
                  {"kappa", ordinary(o.fit.value("kappa"))},
                  {"kappa_e", ordinary(o.fit.value("kappa_e"))}}};
      return o;
    };
  }
  if (kind == "sideband_response") {
    const auto pn = node.child("prior");
    extract::SidebandPrior prior;
    prior.g_eff = angular(pn.quantity("g_eff", Dimension::frequency));
    prior.omega_m = angular(pn.quantity("omega_m", Dimension::frequency));
    prior.gamma = angular(pn.quantity("gamma", Dimension::frequency));
    pn.finish();
    node.finish();
    return [prior](const Trace& trace) {
      FitOutcome o;
      const auto sb = extract::fit_sideband_response(trace, prior);
      o.fit = sb.best;
      o.extra = {{"branch", sb.over_coupled ? "over" : "under"},
                 {"ambiguous", sb.ambiguous},
                 {"ssr_over", sb.ssr_over},
                 {"ssr_under", sb.ssr_under}};
      o.curve = {trace.is_complex() ? "sideband_response" : "sideband_phase",
                 {{"delta", ordinary(o.fit.value("delta"))},
                  {"kappa", ordinary(o.fit.value("kappa"))},
                  {"kappa_e", ordinary(o.fit.value("kappa_e"))},
                  {"g_eff", ordinary(prior.g_eff)},
                  {"omega_m", ordinary(prior.omega_m)},
                  {"gamma", ordinary(prior.gamma)}}};
      return o;
    };
  }
  if (kind == "aom_spectrum") {
    const double kappa = node.quantity("kappa", Dimension::frequency);
    const double kappa_e = node.quantity("kappa_e", Dimension::frequency);
    const double f_mu = node.quantity("f_mu", Dimension::frequency);
    node.finish();
    model::OpticalCavity cav{1.0, angular(kappa), angular(kappa_e)};
    cav.validate();
    return [=](const Trace& trace) {
      FitOutcome o;
      o.fit = extract::fit_aom_spectrum(trace, cav, angular(f_mu));
      o.curve = {"aom_spectrum",
                 {{"kappa", kappa},
                  {"kappa_e", kappa_e},
                  {"f_mu", f_mu},
                  {"h", o.fit.value("h")},
                  {"x_shift", o.fit.value("x_shift")},
                  {"x_scale", o.fit.value("x_scale")}}};
      return o;
    };
  }
  if (kind == "backaction") {
    const double kappa = node.quantity("kappa", Dimension::frequency);
    node.finish();
    return [kappa](const Trace& trace) {
      FitOutcome o;
      o.fit = extract::fit_backaction(trace, angular(kappa));
      o.curve = {"backaction",
                 {{"gamma", ordinary(o.fit.value("gamma"))},
                  {"g0", ordinary(o.fit.value("g0"))},
                  {"kappa", kappa}}};
      return o;
    };
  }
  if (kind == "efficiency") {
    const auto side = read_side(node);
    const auto kappa = node.optional_quantity("kappa", Dimension::frequency);
    const auto gamma = node.optional_quantity("gamma", Dimension::frequency);
    node.finish();
    if (kappa.has_value() != gamma.has_value()) {
      node.fail(kappa ? "gamma" : "kappa", "kappa and gamma go together");
    }
    return [=](const Trace& trace) {
      FitOutcome o;
      o.fit = extract::fit_efficiency_curve(trace, side);
      o.extra = {{"side", model::to_string(side)}};
      if (kappa) {
        o.extra["g0_hz"] =
            ordinary(extract::g0_from_c0(o.fit.value("c0"), angular(*kappa), angular(*gamma)));
      }
      o.curve = {side == model::PumpSide::blue ? "efficiency_blue" : "efficiency_red",
                 {{"eta_e", o.fit.value("eta_e")}, {"c0", o.fit.value("c0")}}};
      return o;
    };
  }
  node.fail("kind",
            "unknown fit kind '" + kind +
                "' (optical_resonance, sideband_response, aom_spectrum, backaction, efficiency)");
}

}  // namespace

void cmd_fit(const ConfigNode& cfg, const Context& ctx) {
  const auto fits = cfg.array("fits");
  cfg.finish();
  if (fits.empty()) cfg.fail("fits", "needs at least one fit");

  // Validate every entry and load every trace before fitting anything.
  struct Job {
    std::string name, kind;
    FitJob run;
    Trace trace;
  };
  std::vector<Job> jobs;
  std::set<std::string> names;
  for (const auto& f : fits) {
    const std::string name = f.string("name");
    if (name.empty() || name.find_first_of("/\\") != std::string::npos) {
      f.fail("name", "must be a plain non-empty file stem");
    }
    if (!names.insert(name).second) f.fail("name", "duplicate fit name '" + name + "'");
    const std::string kind = f.string("kind");
    auto trace = load_trace(f, ctx);
    jobs.push_back({name, kind, prepare(kind, f), std::move(trace)});
  }

  OutputDir out(ctx.out_dir);
  json list = json::array();
  std::ostringstream s;
  s << "omx fit\n";
  std::vector<std::string> rejected;
  for (const auto& job : jobs) {
    json entry = {{"name", job.name}, {"kind", job.kind}, {"points", job.trace.size()}};
    try {
      const auto o = job.run(job.trace);
      entry["result"] = o.fit;
      entry["details"] = o.extra;
      const auto curve = extract::synthesize_trace(o.curve, job.trace.x());
      out.trace(job.name + "_model.csv", curve);
      s << "  " << job.name << " (" << job.kind << ")" << (o.fit.converged ? "" : " [not converged]")
        << "\n";
      for (const auto& p : o.fit.params) {
        const bool ang = p.unit == ParamUnit::angular;
        const double v = ang ? ordinary(p.value) : p.value;
        const double e = ang ? ordinary(p.std_error) : p.std_error;
        s << "    " << p.name << " = " << fmt_sig(v, 6) << " +- " << fmt_sig(e, 2)
          << (ang || p.unit == ParamUnit::hertz ? " Hz" : "") << "\n";
      }
    } catch (const FitRejected& e) {
      entry["rejected"] = e.what();
      rejected.push_back(job.name + ": " + e.what());
      s << "  " << job.name << " (" << job.kind << ") rejected: " << e.what() << "\n";
    }
    list.push_back(entry);
  }
  out.json("result.json", {{"command", "fit"}, {"fits", list}});
  out.text("summary.txt", s.str());
  if (!rejected.empty()) {
    std::string msg = rejected.front();
    if (rejected.size() > 1) msg += " (and " + std::to_string(rejected.size() - 1) + " more)";
    throw FitRejected(msg);
  }
}

}  // namespace omx::cli
