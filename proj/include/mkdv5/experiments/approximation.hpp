#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "../evolution/coeffs.hpp"
#include "../evolution/solvers.hpp"
#include "../spectral_core/norms.hpp"
#include "../wavepacket/packet.hpp"
#include "common.hpp"
#include "config.hpp"
#include "report.hpp"

namespace mkdv5 {

inline void validate(const ApproxConfig& c) {
  for (double N : c.Ns)
    if (!(N > 0.0)) throw PreconditionError("approx: every N must be positive");
  if (!(c.eps >= 0.0)) throw PreconditionError("approx: eps must be non-negative");
  if (!(c.envelope_width > 0.0) || !(c.envelope_length > 0.0))
    throw PreconditionError("approx: envelope width and length must be positive");
  if (!(c.T > 0.0) || !(c.dt > 0.0)) throw PreconditionError("approx: T and dt must be positive");
  if (c.sample_every == 0) throw PreconditionError("approx: sample_every must be positive");
  if (c.sigma != 1.0 && c.sigma != -1.0) throw PreconditionError("approx: sigma must be +1 or -1");
}

// One sweep point: the NLS envelope and the mKdV evolution of U_ap(0), compared at every sample time.
inline RunRecord approximation_run(double N, const ApproxConfig& c) {
  const PacketGeometry geo = packet_geometry(N, c.envelope_length, c.envelope_points);
  const auto& sc = geo.scales;

  EvolveOptions nopt;
  nopt.nls_sign = c.sigma;
  nopt.record_every = c.sample_every;
  const Trajectory nls =
      evolve_cubic_nls(gaussian_envelope(geo.envelope, c.eps, c.envelope_width), c.T, c.dt, nopt);

  auto approximate = [&](double t) {
    const ComplexField& u = nls.spectrum(nls.index_of(t));
    check_envelope_window(u, sc.c * t, geo.envelope.length(), PacketOptions{}.window_tolerance);
    ComplexField z = place_envelope(u, geo, 1, t);
    for (auto& v : z.data()) v *= sc.P;
    return real_part_spectrum(z);
  };

  const ComplexField U0 = approximate(0.0);
  double sup = 0.0, t_sup = 0.0;
  std::size_t samples = 0;
  EvolveOptions mopt;
  mopt.record_every = c.sample_every;
  mopt.store_states = false;
  if (c.slaved_frame) mopt.carrier = N;
  mopt.observer = [&](double t, const ComplexField& u) {
    const double e = sobolev_norm(u - approximate(t), c.norm_s);
    ++samples;
    if (e > sup) {
      sup = e;
      t_sup = t;
    }
  };
  const Trajectory run = evolve_fifth_mkdv(real_from_spectrum(U0), EquationCoeffs::cubic_derivative(c.sigma), c.T,
                                           c.dt, mopt);

  RunRecord r;
  r.label = "N=" + format_short(N);
  r.grid = describe_grid("x", geo.space.length(), geo.space.points()) + "; " +
           describe_grid("y", geo.envelope.length(), geo.envelope.points());
  r.add("N", N);
  r.add("eps", c.eps);
  r.add("nx", static_cast<double>(geo.space.points()), "points");
  r.add("Lx", geo.space.length(), "length");
  r.add("ny", static_cast<double>(geo.envelope.points()), "points");
  r.add("Ly", geo.envelope.length(), "length");
  r.add("dt", run.meta().dt, "time");
  r.add("samples", static_cast<double>(samples), "count");
  r.add("uap_norm_H34", sobolev_norm(U0, c.norm_s), "H^s norm");
  r.add("sup_err_H34", sup, "H^s norm");
  r.add("t_at_sup", t_sup, "time");
  return r;
}

inline ExperimentReport run_approximation_experiment(const ApproxConfig& c, std::uint64_t seed = 0) {
  validate(c);
  ExperimentReport rep;
  rep.experiment = "approx";
  rep.config = c;
  rep.seed = seed;
  const Stopwatch total;
  if (c.Ns.empty()) {
    rep.warnings.push_back("empty N sweep: nothing to run");
    rep.finalize();
    return rep;
  }
  std::vector<double> xs, ys;
  bool all_zero = true;
  for (double N : c.Ns) {
    const Stopwatch w;
    rep.records.push_back(with_context("N = " + format_short(N), [&] { return approximation_run(N, c); }));
    rep.timings["N=" + format_short(N)] = w.seconds();
    xs.push_back(N);
    ys.push_back(*rep.records.back().get("sup_err_H34"));
    if (ys.back() != 0.0) all_zero = false;
  }
  if (all_zero) {
    rep.warnings.push_back("all errors vanish; no slope fitted");
  } else if (xs.size() < min_fit_points) {
    rep.warnings.push_back("fewer than " + std::to_string(min_fit_points) + " sweep points; no slope fitted");
  } else {
    const SlopeFit f = fit_log2_slope(xs, ys, "fitted_slope", "N", "sup_err_H34");
    rep.fits.push_back(f);
    rep.checks.push_back(check_at_most("approximation slope", f.slope, c.slope_threshold,
                                       "sup_t ||U_num - U_ap||_{H^s} against N"));
  }
  SlopeFit plotted;
  if (!rep.fits.empty()) plotted = rep.fits.front();
  rep.plots.push_back(plot_series("approx_error", "N", "sup_err_H34", xs, ys, plotted));
  rep.timings["total"] = total.seconds();
  rep.finalize();
  return rep;
}

}  // namespace mkdv5
