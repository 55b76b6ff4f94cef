#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "../multiplier/kpv.hpp"
#include "common.hpp"
#include "config.hpp"
#include "report.hpp"

namespace mkdv5 {

inline void validate(const CounterexampleConfig& c) {
  for (double N : c.Ns)
    if (!(N >= 1.0)) throw PreconditionError("counterexample: every N must be >= 1");
  if (!(c.b > 0.5 && c.b < 1.0)) throw PreconditionError("counterexample: b must lie in (1/2, 1)");
  if (c.offset_points < 8 || c.frequency_points < 8)
    throw PreconditionError("counterexample: offset_points and frequency_points must be >= 8");
  if (!(c.dmu > 0.0 && c.dmu <= 1.0)) throw PreconditionError("counterexample: dmu must lie in (0, 1]");
}

inline bool is_flat_case(double s) { return std::abs(s - 0.75) < 1e-12; }

inline std::string slope_name(double s) { return "slope_s" + format_short(s); }

inline ExperimentReport run_counterexample_scan(const CounterexampleConfig& c, std::uint64_t seed = 0) {
  validate(c);
  ExperimentReport rep;
  rep.experiment = "counterexample";
  rep.config = c;
  rep.seed = seed;
  const Stopwatch total;
  if (c.Ns.empty() || c.s_values.empty()) {
    rep.warnings.push_back("empty sweep: nothing to run");
    rep.finalize();
    return rep;
  }
  const KpvOptions opt{c.offset_points, c.frequency_points, c.dmu};
  std::map<double, std::vector<double>> ratios;
  for (double N : c.Ns) {
    const Stopwatch w;
    const auto samples =
        with_context("N = " + format_short(N), [&] { return kpv_numerator_samples(N, c.b, opt); });
    for (double s : c.s_values) {
      const KpvRatio r = trilinear_ratio(samples, s);
      RunRecord rec;
      rec.label = "N=" + format_short(N) + " s=" + format_short(s);
      rec.grid = "offsets " + std::to_string(c.offset_points) + "^2, output " + std::to_string(c.frequency_points) +
                 " per band, dmu=" + format_short(c.dmu) + ", indicator 256^2";
      rec.add("N", N);
      rec.add("s", s);
      rec.add("b", c.b);
      rec.add("numerator", r.numerator, "X^{s,b-1} norm");
      rec.add("denominator", r.denominator, "X^{s,b} norm");
      rec.add("ratio", r.ratio, "ratio");
      rep.records.push_back(rec);
      ratios[s].push_back(r.ratio);
    }
    rep.timings["N=" + format_short(N)] = w.seconds();
  }
  for (double s : c.s_values) {
    const SlopeFit f = fit_log2_slope(c.Ns, ratios[s], slope_name(s), "N", "ratio");
    rep.plots.push_back(plot_series("ratio_s" + format_short(s), "N", "ratio", c.Ns, ratios[s], f));
    if (std::isnan(f.slope)) {
      rep.warnings.push_back("s = " + format_short(s) + ": fewer than " + std::to_string(min_fit_points) +
                             " sweep points; no slope fitted");
      continue;
    }
    rep.fits.push_back(f);
    if (is_flat_case(s))
      rep.checks.push_back(check_at_most(slope_name(s), f.slope, c.flat_threshold, "flat at the critical s"));
    else
      rep.checks.push_back(
          check_within(slope_name(s), f.slope, 2.0 * (0.75 - s), c.slope_tolerance, "expected 2(3/4 - s)"));
  }
  rep.timings["total"] = total.seconds();
  rep.finalize();
  return rep;
}

}  // namespace mkdv5
