// SPDX-License-Identifier: Apache-2.0
#include <sstream>

#include "omx/bitcost.hpp"
#include "omx/cli/commands.hpp"
#include "omx/constants.hpp"

namespace omx::cli {

void cmd_bitcost(const ConfigNode& cfg, const Context& ctx) {
  const auto prob_node = cfg.child("problem");
  bitcost::EncodingProblem base;
  base.alpha0_sq = prob_node.number_or("alpha0_sq", 1.0);
  base.ratio_g = prob_node.number("ratio_g");
  base.target_pe = prob_node.number_or("target_pe", 0.1);
  prob_node.finish();

  const auto sweep = cfg.optional_child("sweep");
  const auto energy = cfg.optional_child("energy");
  cfg.finish();
  if (!sweep && !energy) cfg.fail("sweep", "nothing to do: give sweep and/or energy");

  nlohmann::json result;
  result["command"] = "bitcost";
  result["problem"] = {{"alpha0_sq", base.alpha0_sq},
                       {"ratio_g", base.ratio_g},
                       {"target_pe", base.target_pe}};
  std::ostringstream s;
  s << "omx bitcost (ratio_g " << fmt_sig(base.ratio_g) << ", target P_e "
    << fmt_sig(base.target_pe) << ")\n";
  OutputDir out(ctx.out_dir);

  if (sweep) {
    const auto grid = read_grid(sweep->child("ratio_k"), std::nullopt);
    sweep->finish();
    if (!(grid.front() > 0.0)) sweep->fail("ratio_k", "kappa/omega_m must be positive");
    CsvTable t({"ratio_k", "n_phon", "n_slow", "n_fast", "error_probability", "reached"});
    std::size_t unreached = 0;
    for (double k : grid) {
      auto p = base;
      p.ratio_k = k;
      p.validate();
      const auto r = bitcost::required_phonons(p);
      if (!r.reached) ++unreached;
      t.add({fmt(k), r.reached ? fmt(r.n_phon) : "", fmt(bitcost::slow_limit_phonons(p.ratio_g, k)),
             fmt(bitcost::fast_limit_phonons(p.ratio_g)), fmt(r.error_probability),
             r.reached ? "1" : "0"});
    }
    out.csv("phonons.csv", t);
    result["sweep"] = {{"points", grid.size()}, {"unreached", unreached}};
    s << "  sweep        " << grid.size() << " points over kappa/omega_m ["
      << fmt_sig(grid.front()) << ", " << fmt_sig(grid.back()) << "], " << unreached
      << " unreached\n";
  }

  if (energy) {
    const double w_m = angular(energy->quantity("omega_m", Dimension::frequency));
    const double kappa = angular(energy->quantity("kappa", Dimension::frequency));
    const double g0 = angular(energy->quantity("g0", Dimension::frequency));
    const double eta_m = energy->number("eta_m");
    energy->finish();
    auto p = base;
    p.ratio_g = g0 / w_m;
    p.ratio_k = kappa / w_m;
    p.validate();
    const double slow = bitcost::e_bit_slow(w_m, kappa, g0, eta_m);
    const double fast = bitcost::e_bit_fast(w_m, g0, eta_m);
    const double numeric = bitcost::e_bit_numeric(p, w_m, eta_m);
    const bool is_slow = kappa > w_m;
    result["energy"] = {{"ratio_g", p.ratio_g},
                        {"ratio_k", p.ratio_k},
                        {"e_bit_slow_j", slow},
                        {"e_bit_fast_j", fast},
                        {"e_bit_numeric_j", numeric},
                        {"regime", is_slow ? "slow" : "fast"}};
    s << "  E_bit slow   " << fmt_sig(slow) << " J\n";
    s << "  E_bit fast   " << fmt_sig(fast) << " J\n";
    s << "  E_bit search " << fmt_sig(numeric) << " J (" << (is_slow ? "slow" : "fast")
      << " regime)\n";
  }

  out.json("result.json", result);
  out.text("summary.txt", s.str());
}

}  // namespace omx::cli
