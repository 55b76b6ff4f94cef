#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "../multiplier/block.hpp"
#include "../multiplier/resonance.hpp"
#include "common.hpp"
#include "config.hpp"
#include "report.hpp"

namespace mkdv5 {

inline void validate(const ResonanceConfig& c) {
  if (!(c.xi_max > 0.0)) throw PreconditionError("resonance: xi_max must be positive");
  if (!(c.identity_tolerance > 0.0)) throw PreconditionError("resonance: identity_tolerance must be positive");
  if (!(c.block_safety > 0.0)) throw PreconditionError("resonance: block_safety must be positive");
}

// Largest relative gap between the factored h and the expanded sum of fifth powers in 50 digits.
inline double resonance_identity_error(std::size_t samples, double xi_max, std::uint64_t seed) {
  using big = boost::multiprecision::cpp_bin_float_50;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x1 = xi_max * (2.0 * uniform01(rng) - 1.0);
    const double x2 = xi_max * (2.0 * uniform01(rng) - 1.0);
    const big exact = resonance_h_expanded<big>(big(x1), big(x2));
    if (exact == 0) continue;
    const big rel = abs((big(resonance_h(x1, x2)) - exact) / exact);
    worst = std::max(worst, rel.convert_to<double>());
  }
  return worst;
}

// Inadmissible specs that break N_med ~ N_max or L_max ~ max(H, L_med), drawn from the regression lattice.
inline std::vector<DyadicBlockSpec> vanishing_block_specs(std::size_t count, std::uint64_t seed) {
  const double ns[] = {0.5, 1.0, 2.0, 4.0, 16.0, 64.0};
  const double ls[] = {1, 4, 16, 64, 256, 1024};
  std::vector<DyadicBlockSpec> all;
  for (double a : ns)
    for (double b : ns)
      for (double c : ns)
        for (double p : ls)
          for (double q : ls)
            for (double r : ls)
              for (int e = 0; e <= 12; e += 3) {
                DyadicBlockSpec s{{a, b, c}, std::ldexp(1.0, e), {p, q, r}};
                const auto v = s.violation();
                if (v && (*v == "N_med ~ N_max" || *v == "L_max ~ max(H, L_med)")) all.push_back(s);
              }
  std::mt19937_64 rng(seed);
  std::vector<DyadicBlockSpec> out;
  for (std::size_t i = 0; out.size() < count && i < all.size(); ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (all.size() - i));
    std::swap(all[i], all[j]);
    out.push_back(all[i]);
  }
  return out;
}

inline std::string describe(const DyadicBlockSpec& s) {
  return "N=(" + format_short(s.N[0]) + "," + format_short(s.N[1]) + "," + format_short(s.N[2]) + ") H=" + format_short(s.H) +
         " L=(" + format_short(s.L[0]) + "," + format_short(s.L[1]) + "," + format_short(s.L[2]) + ")";
}

inline RunRecord block_record(const DyadicBlockSpec& s, const BlockEstimate& e, double bound, const std::string& which) {
  RunRecord r;
  r.label = which + " " + describe(s);
  r.grid = "estimator lattice";
  for (int j = 0; j < 3; ++j) r.add("N" + std::to_string(j + 1), s.N[j]);
  r.add("H", s.H);
  for (int j = 0; j < 3; ++j) r.add("L" + std::to_string(j + 1), s.L[j]);
  r.add("estimate", e.value, "operator norm");
  r.add("bound", bound, "operator norm");
  r.add("estimate_over_bound", bound > 0.0 ? e.value / bound : 0.0, "ratio");
  r.add("rounds", static_cast<double>(e.rounds), "count");
  r.add("triples", static_cast<double>(e.triples), "count");
  return r;
}

inline ExperimentReport run_resonance_experiment(const ResonanceConfig& c, std::uint64_t seed = 1) {
  validate(c);
  ExperimentReport rep;
  rep.experiment = "resonance";
  rep.config = c;
  rep.seed = seed;
  const Stopwatch total;

  if (c.samples > 0) {
    const double err = resonance_identity_error(c.samples, c.xi_max, seed);
    const ResonanceReport rel = check_resonance_relation(c.samples, seed);
    RunRecord r;
    r.label = "resonance";
    r.grid = "random triples";
    r.add("samples", static_cast<double>(c.samples), "count");
    r.add("identity_rel_error", err, "relative");
    r.add("ratio_min", rel.ratio_min, "ratio");
    r.add("ratio_max", rel.ratio_max, "ratio");
    rep.records.push_back(r);
    rep.checks.push_back(check_at_most("resonance identity", err, c.identity_tolerance, "factored vs expanded"));
    rep.checks.push_back(check_at_least("resonance ratio min", rel.ratio_min, rel.lower, "|h|/(N_max^4 N_min)"));
    rep.checks.push_back(check_at_most("resonance ratio max", rel.ratio_max, rel.upper, "|h|/(N_max^4 N_min)"));
    rep.timings["resonance"] = total.seconds();
  }

  BlockEstimateOptions opt;
  opt.trials = c.block_trials;
  opt.seed = seed;
  if (c.block_count > 0) {
    const Stopwatch w;
    double worst = 0.0;
    for (const auto& s : block_regression_set(c.block_count, seed, opt)) {
      const auto e = with_context(describe(s), [&] { return estimate_block_norm(s, opt); });
      const BlockBound b = block_bound(s);
      rep.records.push_back(block_record(s, e, b.value, std::string("case ") + to_string(b.which)));
      worst = std::max(worst, e.value / b.value);
    }
    rep.checks.push_back(check_at_most("block estimate / bound", worst, c.block_safety, "over the regression set"));
    rep.timings["blocks"] = w.seconds();
  }
  if (c.vanishing_specs > 0) {
    const Stopwatch w;
    double worst = 0.0;
    for (const auto& s : vanishing_block_specs(c.vanishing_specs, seed)) {
      const auto e = estimate_block_norm(s, opt);
      rep.records.push_back(block_record(s, e, 0.0, "vanishing"));
      worst = std::max(worst, e.value);
    }
    rep.checks.push_back(check_at_most("vanishing block estimate", worst, 0.0, "relations violated"));
    rep.timings["vanishing"] = w.seconds();
  }
  if (rep.checks.empty()) rep.warnings.push_back("empty sweep: nothing to run");
  rep.timings["total"] = total.seconds();
  rep.finalize();
  return rep;
}

}  // namespace mkdv5
