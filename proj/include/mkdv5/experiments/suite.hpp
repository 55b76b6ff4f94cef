#pragma once

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "../evolution/coeffs.hpp"
#include "../evolution/conserved.hpp"
#include "../evolution/solvers.hpp"
#include "../multiplier/block.hpp"
#include "../multiplier/resonance.hpp"
#include "common.hpp"
#include "config.hpp"
#include "report.hpp"
#include "resonance_scan.hpp"

namespace mkdv5 {

inline void validate(const SuiteConfig& c) {
  for (const auto& name : c.checks)
    if (std::find(suite_check_names().begin(), suite_check_names().end(), name) == suite_check_names().end())
      throw PreconditionError("suite: unknown check '" + name + "'");
  if (!(c.mkdv_mass_dt > 0.0) || !(c.convergence_dt > 0.0) || !(c.convergence_T > 0.0))
    throw PreconditionError("suite: time steps and horizons must be positive");
}

// cos x + sin(2x + 0.3)/2 + cos(3x - 1)/4 scaled to the given L2 norm.
inline RealField smooth_periodic_data(const SpaceGrid& g, double target_l2) {
  auto u = sample_real(g, [](double x) { return std::cos(x) + 0.5 * std::sin(2 * x + 0.3) + 0.25 * std::cos(3 * x - 1.0); });
  const double scale = target_l2 / l2_norm(u);
  for (auto& v : u.data()) v *= scale;
  return u;
}

namespace suite {

// Every mode of a flat spectrum against e^{i k^5 t} with the angle reduced in 50 digits.
inline double linear_phase_error() {
  using big = boost::multiprecision::cpp_bin_float_50;
  const SpaceGrid g(2.0 * std::numbers::pi, 256);
  ComplexField s(g, Side::spectral);
  for (auto& v : s.data()) v = 1.0;
  const ComplexField out = linear_fifth_propagator(s, 1.0);
  const big two_pi = 2 * boost::math::constants::pi<big>();
  double worst = 0.0;
  for (std::size_t j = 0; j < g.points(); ++j) {
    const big k = static_cast<double>(g.mode(j));
    big phase = fmod(k * k * k * k * k, two_pi);
    const cd expect = std::polar(1.0, phase.convert_to<double>());
    worst = std::max(worst, std::abs(out[j] - expect));
  }
  return worst;
}

inline double nls_constant_error() {
  const SpaceGrid g(2.0 * std::numbers::pi, 16);
  const double a = 0.8;
  ComplexField u0(g, Side::physical);
  for (auto& v : u0.data()) v = a;
  const auto traj = evolve_cubic_nls(u0, 1.0, 1e-3);
  const auto u1 = traj.physical_state(traj.size() - 1);
  const cd expect = a * std::polar(1.0, a * a);
  double worst = 0.0;
  for (const auto& v : u1.data()) worst = std::max(worst, std::abs(v - expect));
  return worst;
}

inline double nls_mass_drift() {
  const SpaceGrid g(40.0, 256);
  const auto u0 = sample(g, [](double y) {
    const double z = y - 20.0;
    return std::exp(-z * z / 4.0) * std::polar(1.2, 0.3 * z);
  });
  EvolveOptions opt;
  opt.record_every = 50;
  return conserved_quantities(evolve_cubic_nls(u0, 1.0, 1e-3, opt)).max_mass_drift;
}

inline double mkdv_mass_drift(double dt) {
  const SpaceGrid g(2.0 * std::numbers::pi, 64);
  EvolveOptions opt;
  opt.record_every = 10;
  const auto traj = evolve_fifth_mkdv(smooth_periodic_data(g, 0.1), EquationCoeffs::integrable(), 0.1, dt, opt);
  return conserved_quantities(traj).max_mass_drift;
}

struct Convergence {
  double e1 = 0.0, e2 = 0.0, order = 0.0;
};

// Errors at dt and dt/2 against a run with dt/16 (at most T/16384).
inline Convergence mkdv_convergence(double T, double dt) {
  const SpaceGrid g(2.0 * std::numbers::pi, 16);
  const auto u0 = smooth_periodic_data(g, 0.3);
  const auto c = EquationCoeffs::cubic_derivative();
  const auto ref = evolve_fifth_mkdv(u0, c, T, std::min(dt, T / 1024) / 16).back();
  auto err = [&](double h) { return linf_norm(to_physical(evolve_fifth_mkdv(u0, c, T, h).back()) - to_physical(ref)); };
  Convergence r;
  r.e1 = err(dt);
  r.e2 = err(dt / 2);
  r.order = std::log2(r.e1 / r.e2);
  return r;
}

}  // namespace suite

inline ExperimentReport run_validation_suite(const SuiteConfig& c, std::uint64_t seed = 1) {
  validate(c);
  ExperimentReport rep;
  rep.experiment = "suite";
  rep.config = c;
  rep.seed = seed;
  const Stopwatch total;
  if (c.checks.empty()) {
    rep.warnings.push_back("empty sweep: no checks selected");
    rep.finalize();
    return rep;
  }
  auto enabled = [&](const char* name) { return std::find(c.checks.begin(), c.checks.end(), name) != c.checks.end(); };
  auto record = [&](const char* name, const char* quantity, double value, const char* unit, const std::string& grid) {
    RunRecord r;
    r.label = name;
    r.grid = grid;
    r.add(quantity, value, unit);
    rep.records.push_back(r);
  };

  if (enabled("linear_phase")) {
    const Stopwatch w;
    const double e = suite::linear_phase_error();
    record("linear_phase", "max_error", e, "absolute", "periodic L=2pi n=256, t=1");
    rep.checks.push_back(check_at_most("linear_phase", e, c.linear_tolerance, "e^{i k^5 t} per mode"));
    rep.timings["linear_phase"] = w.seconds();
  }
  if (enabled("nls_constant")) {
    const Stopwatch w;
    const double e = suite::nls_constant_error();
    record("nls_constant", "max_error", e, "absolute", "periodic L=2pi n=16, t=1, dt=1e-3");
    rep.checks.push_back(check_at_most("nls_constant", e, c.nls_constant_tolerance, "a e^{i a^2 t}, a = 0.8"));
    rep.timings["nls_constant"] = w.seconds();
  }
  if (enabled("nls_mass")) {
    const Stopwatch w;
    const double d = suite::nls_mass_drift();
    record("nls_mass", "mass_drift", d, "relative", "periodic L=40 n=256, T=1, dt=1e-3");
    rep.checks.push_back(check_at_most("nls_mass", d, c.nls_mass_tolerance, "max relative L2^2 drift"));
    rep.timings["nls_mass"] = w.seconds();
  }
  if (enabled("mkdv_mass")) {
    const Stopwatch w;
    const double d = with_context("mkdv_mass", [&] { return suite::mkdv_mass_drift(c.mkdv_mass_dt); });
    record("mkdv_mass", "mass_drift", d, "relative", "periodic L=2pi n=64, T=0.1, dt=" + format_short(c.mkdv_mass_dt));
    rep.checks.push_back(check_at_most("mkdv_mass", d, c.mkdv_mass_tolerance, "integrable preset, ||u0||_2 = 0.1"));
    rep.timings["mkdv_mass"] = w.seconds();
  }
  if (enabled("mkdv_convergence")) {
    const Stopwatch w;
    const auto r = with_context("mkdv_convergence", [&] { return suite::mkdv_convergence(c.convergence_T, c.convergence_dt); });
    RunRecord rec;
    rec.label = "mkdv_convergence";
    rec.grid = "periodic L=2pi n=16, T=" + format_short(c.convergence_T) + ", dt=" + format_short(c.convergence_dt);
    rec.add("error_dt", r.e1, "absolute");
    rec.add("error_dt_half", r.e2, "absolute");
    rec.add("order", r.order, "order");
    rep.records.push_back(rec);
    const bool ok = r.order >= c.convergence_min_order && r.order <= c.convergence_max_order;
    rep.checks.push_back({"mkdv_convergence", r.order, "in", c.convergence_max_order, c.convergence_min_order, ok,
                          "observed order within [min, max]"});
    rep.timings["mkdv_convergence"] = w.seconds();
  }
  if (enabled("resonance_identity")) {
    const Stopwatch w;
    const double e = resonance_identity_error(c.resonance_samples, 1000.0, seed);
    record("resonance_identity", "max_rel_error", e, "relative", "random (xi1, xi2) in [-1000, 1000]^2");
    rep.checks.push_back(check_at_most("resonance_identity", e, 1e-10, "factored vs 50-digit sum of fifth powers"));
    rep.timings["resonance_identity"] = w.seconds();
  }
  if (enabled("resonance_relation")) {
    const Stopwatch w;
    const auto r = check_resonance_relation(c.resonance_samples, seed);
    RunRecord rec;
    rec.label = "resonance_relation";
    rec.grid = "random admissible triples";
    rec.add("ratio_min", r.ratio_min, "ratio");
    rec.add("ratio_max", r.ratio_max, "ratio");
    rep.records.push_back(rec);
    rep.checks.push_back({"resonance_relation", r.ratio_max, "in", r.upper, r.lower, r.pass,
                          "|h|/(N_max^4 N_min) within [1/32, 32]"});
    rep.timings["resonance_relation"] = w.seconds();
  }
  if (enabled("block_vanishing")) {
    const Stopwatch w;
    double worst = 0.0;
    for (const auto& s : vanishing_block_specs(8, seed)) worst = std::max(worst, estimate_block_norm(s).value);
    record("block_vanishing", "max_estimate", worst, "operator norm", "estimator lattice");
    rep.checks.push_back(check_at_most("block_vanishing", worst, 0.0, "estimates vanish off the relations"));
    rep.timings["block_vanishing"] = w.seconds();
  }
  rep.timings["total"] = total.seconds();
  rep.finalize();
  return rep;
}

}  // namespace mkdv5
