// One line per acceptance criterion; exits nonzero when any of them fails.
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "mkdv5/cli_io.hpp"
#include "mkdv5/experiments.hpp"

using namespace mkdv5;

namespace {

constexpr double linear_tol = 1e-12;
constexpr double nls_constant_tol = 1e-10;
constexpr double nls_mass_tol = 1e-8;
constexpr double mkdv_mass_tol = 1e-6;
constexpr double identity_tol = 1e-10;
constexpr double ratio_lo = 1.0 / 32, ratio_hi = 32.0;
constexpr double block_safety = 8.0;
constexpr double slope_tol = 0.15;
constexpr double approx_slope_max = -2.0;
constexpr double amplification_min = 10.0;
constexpr double size_max = 2.0;
constexpr double control_max = 1e-6;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [violated]");
  }
};

double check_value(const ExperimentReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c.value;
  return std::nan("");
}

double record_value(const ExperimentReport& r, const std::string& label, const std::string& q) {
  for (const auto& rec : r.records)
    if (rec.label == label)
      if (const auto v = rec.get(q)) return *v;
  return std::nan("");
}

std::string num(double v) { return format_short(v); }

int failures = 0;

void criterion(int id, double budget_s, const std::function<Outcome()>& body) {
  const Stopwatch w;
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double t = w.seconds();
  o.require(t < budget_s, "runtime " + num(std::round(t * 100) / 100) + " s < " + num(budget_s) + " s");
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << o.detail << std::endl;
}

SuiteConfig suite_with(std::vector<std::string> checks) {
  SuiteConfig c;
  c.checks = std::move(checks);
  c.linear_tolerance = linear_tol;
  c.nls_constant_tolerance = nls_constant_tol;
  c.nls_mass_tolerance = nls_mass_tol;
  c.mkdv_mass_tolerance = mkdv_mass_tol;
  c.mkdv_mass_dt = 2.5e-4;
  return c;
}

}  // namespace

int main() {
  criterion(1, 10, [] {
    const auto r = run_validation_suite(suite_with({"linear_phase", "nls_constant"}));
    Outcome o;
    const double lin = check_value(r, "linear_phase"), nls = check_value(r, "nls_constant");
    o.require(lin <= linear_tol, "linear phase error " + num(lin) + " <= " + num(linear_tol));
    o.require(nls <= nls_constant_tol, "NLS constant error " + num(nls) + " <= " + num(nls_constant_tol));
    return o;
  });

  criterion(2, 120, [] {
    const auto r = run_validation_suite(suite_with({"nls_mass", "mkdv_mass"}));
    Outcome o;
    const double nls = check_value(r, "nls_mass"), mkdv = check_value(r, "mkdv_mass");
    o.require(nls < nls_mass_tol, "NLS mass drift " + num(nls) + " < " + num(nls_mass_tol));
    o.require(mkdv < mkdv_mass_tol, "mKdV mass drift " + num(mkdv) + " < " + num(mkdv_mass_tol));
    return o;
  });

  criterion(3, 10, [] {
    ResonanceConfig c;
    c.samples = 100000;
    c.identity_tolerance = identity_tol;
    c.block_count = 0;
    c.vanishing_specs = 0;
    const auto r = run_resonance_experiment(c);
    Outcome o;
    const double e = record_value(r, "resonance", "identity_rel_error");
    const double lo = record_value(r, "resonance", "ratio_min"), hi = record_value(r, "resonance", "ratio_max");
    o.require(e <= identity_tol, "identity error " + num(e) + " <= " + num(identity_tol));
    o.require(lo >= ratio_lo && hi <= ratio_hi, "ratio range [" + num(lo) + ", " + num(hi) + "] in [1/32, 32]");
    return o;
  });

  criterion(4, 300, [] {
    ResonanceConfig c;
    c.samples = 0;
    c.block_count = 100;
    c.block_trials = 10000;
    c.block_safety = block_safety;
    c.vanishing_specs = 20;
    const auto r = run_resonance_experiment(c);
    Outcome o;
    const double worst = check_value(r, "block estimate / bound"), zero = check_value(r, "vanishing block estimate");
    o.require(worst <= block_safety, "max estimate / bound " + num(worst) + " <= " + num(block_safety));
    o.require(zero == 0.0, "vanishing estimates " + num(zero) + " == 0");
    return o;
  });

  criterion(5, 600, [] {
    CounterexampleConfig c;
    c.Ns = {16, 32, 64, 128, 256, 512};
    c.s_values = {0.75, 0.25, 0.0};
    const auto r = run_counterexample_scan(c);
    Outcome o;
    const double s14 = check_value(r, slope_name(0.25)), s0 = check_value(r, slope_name(0.0));
    const double s34 = check_value(r, slope_name(0.75));
    o.require(std::abs(s14 - 1.0) <= slope_tol, "slope at s=1/4 " + num(s14) + " = 1 +- " + num(slope_tol));
    o.require(std::abs(s0 - 1.5) <= slope_tol, "slope at s=0 " + num(s0) + " = 1.5 +- " + num(slope_tol));
    o.require(s34 <= slope_tol, "slope at s=3/4 " + num(s34) + " <= " + num(slope_tol));
    return o;
  });

  criterion(6, 1800, [] {
    ApproxConfig c;
    c.Ns = {8, 16, 32};
    c.eps = 0.05;
    c.T = 1.0;
    const auto r = run_approximation_experiment(c);
    Outcome o;
    const double slope = r.fits.empty() ? std::nan("") : r.fits.front().slope;
    o.require(slope <= approx_slope_max, "fitted slope " + num(slope) + " <= " + num(approx_slope_max));
    return o;
  });

  criterion(7, 1800, [] {
    IllposedConfig c;
    c.s = -0.2;
    c.eps = 8.0;
    c.delta = 0.08;
    const auto r = run_illposedness_experiment(c);
    Outcome o;
    o.require(r.status != ReportStatus::inconclusive, "horizon reached");
    const double amp = check_value(r, "amplification"), size = check_value(r, "sup size / eps");
    const double ctrl = check_value(r, "control distance / eps");
    o.require(amp >= amplification_min, "amplification " + num(amp) + " >= " + num(amplification_min));
    o.require(size <= size_max, "sup size / eps " + num(size) + " <= " + num(size_max));
    o.require(ctrl <= control_max, "control distance / eps " + num(ctrl) + " <= " + num(control_max));
    return o;
  });

  criterion(8, 600, [] {
    Outcome o;
    auto same = [&](const std::string& name, const std::function<ExperimentReport()>& run) {
      o.require(report_numerics(run()) == report_numerics(run()), name + " reproduces");
    };
    RunConfig c;
    c.approx.Ns = {8, 16};
    c.approx.T = 0.5;
    c.illposed.delta = 0.0;
    c.illposed.horizon_factor = 0.05;
    c.resonance.samples = 5000;
    c.resonance.block_count = 5;
    c.resonance.block_trials = 500;
    c.resonance.vanishing_specs = 5;
    same("suite", [&] { return run_validation_suite(c.suite, 3); });
    same("counterexample", [&] { return run_counterexample_scan(c.counterexample, 3); });
    same("approx", [&] { return run_approximation_experiment(c.approx, 3); });
    same("illposed", [&] { return run_illposedness_experiment(c.illposed, 3); });
    same("resonance", [&] { return run_resonance_experiment(c.resonance, 3); });
    return o;
  });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
