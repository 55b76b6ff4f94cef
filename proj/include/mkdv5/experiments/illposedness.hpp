#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "../evolution/coeffs.hpp"
#include "../evolution/solvers.hpp"
#include "../spectral_core/norms.hpp"
#include "../wavepacket/packet.hpp"
#include "../wavepacket/params.hpp"
#include "../wavepacket/rescale.hpp"
#include "common.hpp"
#include "config.hpp"
#include "report.hpp"

namespace mkdv5 {

inline WavePacketParams packet_params(const IllposedConfig& c) {
  WavePacketParams p;
  p.N = c.N;
  p.s = c.s;
  p.eps = c.eps;
  p.delta = c.delta;
  p.lambda = c.lambda;
  return p;
}

inline void validate(const IllposedConfig& c) {
  packet_params(c).validate(true);
  if (!(c.plateau_width > 0.0) || !(c.plateau_edge > 0.0))
    throw PreconditionError("illposed: plateau width and edge must be positive");
  if (!(c.dt > 0.0) || !(c.max_time > 0.0) || !(c.horizon_factor > 0.0))
    throw PreconditionError("illposed: dt, max_time and horizon_factor must be positive");
  if (c.record_every == 0) throw PreconditionError("illposed: record_every must be positive");
  if (c.sigma != 1.0 && c.sigma != -1.0) throw PreconditionError("illposed: sigma must be +1 or -1");
}

// Time at which the constant solutions a_j e^{i sigma a_j^2 t} are out of phase by pi.
inline double decoherence_time(double a1, double a2) {
  const double gap = std::abs(a2 * a2 - a1 * a1);
  return gap > 0.0 ? std::numbers::pi / gap : std::numeric_limits<double>::infinity();
}

// ||lambda f(lambda .)||_{H^s} for a spectrum f; exact because the Fourier indices are kept.
inline double rescaled_sobolev(const ComplexField& f, double lambda, double s) {
  return sobolev_norm(rescale(f, lambda), s);
}

// Solutions are evolved at the unscaled carrier N and measured after the exact rescaling
// U^lambda(t, x) = lambda U(lambda^5 t, lambda x), which maps the mKdV flow to itself.
inline ExperimentReport run_illposedness_experiment(const IllposedConfig& c, std::uint64_t seed = 0) {
  validate(c);
  ExperimentReport rep;
  rep.experiment = "illposed";
  rep.config = c;
  rep.seed = seed;
  const Stopwatch total;

  const double lambda = packet_params(c).lambda_value();
  const double l5 = std::pow(lambda, 5);
  const double a1 = c.eps, a2 = c.eps + c.delta;
  const double tstar = decoherence_time(a1, a2);
  // With delta = 0 only the control runs, over the horizon a 1% amplitude gap would need.
  const bool control_only = c.delta == 0.0;
  const double T = control_only ? std::min(c.max_time, c.horizon_factor * decoherence_time(a1, a1 * 1.01))
                                : c.horizon_factor * tstar;

  RunRecord setup;
  setup.label = "setup";
  setup.add("N", c.N);
  setup.add("s", c.s);
  setup.add("eps", c.eps);
  setup.add("delta", c.delta);
  setup.add("lambda", lambda);
  setup.add("t_star", tstar, "unscaled time");
  setup.add("t_star_rescaled", tstar / l5, "time");
  setup.add("T", T, "unscaled time");
  setup.add("T_rescaled", T / l5, "time");

  if (!control_only && T > c.max_time) {
    setup.grid = "none";
    rep.records.push_back(setup);
    rep.warnings.push_back("decoherence horizon " + format_short(T) + " exceeds max_time " + format_short(c.max_time) +
                           "; required horizon t*/lambda^5 = " + format_short(T / l5) +
                           " in rescaled time. Increase eps or delta/eps");
    rep.status = ReportStatus::inconclusive;
    rep.timings["total"] = total.seconds();
    rep.finalize();
    return rep;
  }

  const PacketGeometry geo = packet_geometry(c.N, c.envelope_length, c.envelope_points);
  setup.grid = describe_grid("x", geo.space.length(), geo.space.points()) + "; " +
               describe_grid("y", geo.envelope.length(), geo.envelope.points());
  auto initial = [&](double amplitude) {
    return to_spectral(
        build_U_ap(plateau_envelope(geo.envelope, amplitude, c.plateau_width, c.plateau_edge), c.N, 0.0, geo.space));
  };
  const ComplexField U1 = initial(a1);
  const ComplexField U2 = initial(a2);
  const auto coeffs = EquationCoeffs::cubic_derivative(c.sigma);
  EvolveOptions opt;
  opt.record_every = c.record_every;
  opt.carrier = c.N;

  // Solution 1 is stored and the other runs are compared against it step by step.
  const Stopwatch w1;
  const Trajectory first = with_context("solution 1", [&] { return evolve_fifth_mkdv(real_from_spectrum(U1), coeffs, T, c.dt, opt); });
  rep.timings["solution_1"] = w1.seconds();
  setup.add("nx", static_cast<double>(geo.space.points()), "points");
  setup.add("dt", first.meta().dt, "unscaled time");
  setup.add("dt_rescaled", first.meta().dt / l5, "time");
  rep.records.push_back(setup);

  auto compare = [&](const ComplexField& start, std::vector<double>& dist_s, std::vector<double>& dist_34,
                     std::vector<double>& size_s) {
    std::size_t i = 0;
    EvolveOptions o = opt;
    o.store_states = false;
    o.observer = [&](double t, const ComplexField& u) {
      if (std::abs(first.time(i) - t) > 1e-9) throw UsageError("illposed: sample times diverged");
      const ComplexField d = u - first.spectrum(i);
      dist_s.push_back(rescaled_sobolev(d, lambda, c.s));
      dist_34.push_back(rescaled_sobolev(d, lambda, 0.75));
      size_s.push_back(rescaled_sobolev(u, lambda, c.s));
      ++i;
    };
    evolve_fifth_mkdv(real_from_spectrum(start), coeffs, T, c.dt, o);
  };

  std::vector<double> cd_s, cd_34, csize;
  const Stopwatch wc;
  with_context("control", [&] { compare(U1, cd_s, cd_34, csize); });
  rep.timings["control"] = wc.seconds();
  double control = 0.0;
  for (double v : cd_s) control = std::max(control, v);
  rep.checks.push_back(check_at_most("control distance / eps", control / c.eps, c.control_tolerance,
                                     "identical data evolved twice, H^s distance"));
  if (!rep.checks.back().pass || control_only) {
    if (!rep.checks.back().pass) rep.warnings.push_back("control failed; no divergence claim recorded");
    rep.timings["total"] = total.seconds();
    rep.finalize();
    return rep;
  }

  std::vector<double> d_s, d_34, size2;
  const Stopwatch w2;
  with_context("solution 2", [&] { compare(U2, d_s, d_34, size2); });
  rep.timings["solution_2"] = w2.seconds();

  double sup_size = 0.0, sup_d = 0.0, sup_d34 = 0.0, t_amp = -1.0;
  for (std::size_t i = 0; i < d_s.size(); ++i) {
    sup_size = std::max({sup_size, csize[i], size2[i]});
    sup_d = std::max(sup_d, d_s[i]);
    sup_d34 = std::max(sup_d34, d_34[i]);
    if (t_amp < 0.0 && d_s[i] >= c.amplification_threshold * d_s[0]) t_amp = first.time(i);
  }
  const double amplification = sup_d / d_s[0];
  RunRecord res;
  res.label = "pair";
  res.grid = setup.grid;
  res.add("size_0_u", csize[0], "H^s norm");
  res.add("size_0_v", size2[0], "H^s norm");
  res.add("sup_size", sup_size, "H^s norm");
  res.add("dist_0", d_s[0], "H^s norm");
  res.add("sup_dist", sup_d, "H^s norm");
  res.add("amplification", amplification, "ratio");
  res.add("t_amplified", t_amp, "unscaled time");
  res.add("dist_0_H34", d_34[0], "H^{3/4} norm");
  res.add("sup_dist_H34", sup_d34, "H^{3/4} norm");
  res.add("amplification_H34", sup_d34 / d_34[0], "ratio");
  res.add("control_sup_dist", control, "H^s norm");
  rep.records.push_back(res);

  PlotSeries p{"distance", "t_rescaled", "dist_Hs", {}, {}, {}};
  PlotSeries q{"distance_H34", "t_rescaled", "dist_H34", {}, {}, {}};
  for (std::size_t i = 0; i < d_s.size(); ++i) {
    p.x.push_back(first.time(i) / l5);
    p.y.push_back(d_s[i]);
    q.x.push_back(first.time(i) / l5);
    q.y.push_back(d_34[i]);
  }
  rep.plots.push_back(p);
  rep.plots.push_back(q);

  rep.checks.push_back(check_at_least("amplification", amplification, c.amplification_threshold,
                                      "sup_t H^s distance over the initial distance"));
  rep.checks.push_back(check_at_most("sup size / eps", sup_size / c.eps, c.size_factor,
                                     "largest H^s norm of either solution over eps"));
  rep.timings["total"] = total.seconds();
  rep.finalize();
  return rep;
}

}  // namespace mkdv5
