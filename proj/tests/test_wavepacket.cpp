#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "mkdv5/evolution.hpp"
#include "mkdv5/spectral_core.hpp"
#include "mkdv5/wavepacket.hpp"

using namespace mkdv5;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

Trajectory envelope_run(const PacketGeometry& geo, double eps, double sigma, double T = 1.0, double dt = 0.01,
                        std::size_t every = 10) {
  EvolveOptions opt;
  opt.nls_sign = sigma;
  opt.record_every = every;
  return evolve_cubic_nls(gaussian_envelope(geo.envelope, eps, 2.0), T, dt, opt);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log2(x[i]);
    my += std::log2(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log2(x[i]) - mx) * (std::log2(y[i]) - my);
    sxx += (std::log2(x[i]) - mx) * (std::log2(x[i]) - mx);
  }
  return sxy / sxx;
}

double band_sobolev(const ComplexField& spec, double s, double kmin, double kmax) {
  const auto& g = spec.grid();
  double acc = 0;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double k = std::abs(g.wavenumber(j));
    if (k >= kmin && k < kmax) acc += japanese_pow(k, 2 * s) * std::norm(spec[j]);
  }
  return std::sqrt(acc * g.length());
}

}  // namespace

TEST_CASE("change of variables") {
  for (double N : {8.0, 16.0, 32.0}) {
    auto [s0, y0] = change_of_variables(0, 0, N);
    REQUIRE(s0 == 0.0);
    REQUIRE(y0 == 0.0);
    auto [s1, y1] = change_of_variables(1, 0, N);
    REQUIRE(s1 == 1.0);
    REQUIRE_THAT(y1, WithinRel(std::sqrt(2.5) * std::pow(N, 2.5), 1e-15));
    auto [s2, y2] = change_of_variables(0, std::sqrt(10 * N * N * N), N);
    REQUIRE(s2 == 0.0);
    REQUIRE_THAT(y2, WithinAbs(1.0, 1e-15));
    for (double t : {0.0, 0.3, 1.7})
      for (double x : {-5.0, 0.0, 123.25}) {
        auto [s, y] = change_of_variables(t, x, N);
        auto [tb, xb] = inverse_change_of_variables(s, y, N);
        REQUIRE(tb == t);
        REQUIRE_THAT(xb, WithinAbs(x, 1e-12 * std::max(1.0, std::abs(x)) * std::pow(N, 4)));
      }
  }
}

TEST_CASE("wave packet parameters") {
  WavePacketParams p;
  p.N = 16;
  p.s = -0.2;
  REQUIRE_THAT(p.lambda_value(), WithinRel(std::pow(16.0, 0.95 / 0.3), 1e-14));
  p.lambda = 2.0;
  REQUIRE(p.lambda_value() == 2.0);
  p.s = 0.9;
  REQUIRE_THROWS_AS(p.validate(true), PreconditionError);
  REQUIRE_NOTHROW(p.validate(false));
  p.s = -0.3;
  REQUIRE_THROWS_AS(p.validate(true), PreconditionError);
}

TEST_CASE("packet geometry is commensurate") {
  const auto geo = packet_geometry(8.0, 24.0, 64);
  REQUIRE_THAT(geo.space.length(), WithinRel(geo.scales.a * geo.envelope.length(), 1e-14));
  REQUIRE_THAT(geo.space.dk() * geo.carrier_mode, WithinRel(8.0, 1e-13));
  REQUIRE(geo.space.max_mode() >= 3 * geo.carrier_mode + 3 * 32);
  REQUIRE(std::abs(geo.envelope.length() - 24.0) < geo.envelope.length() / geo.carrier_mode);
  REQUIRE(fast_even_size(1001) == 1024);
  REQUIRE(fast_even_size(7) == 8);
  REQUIRE(fast_even_size(241) == 250);
}

TEST_CASE("approximate solution examples") {
  const double N = 8.0;
  const auto geo = packet_geometry(N, 24.0, 64);
  const PacketScales& sc = geo.scales;

  ComplexField zero(geo.envelope, Side::physical);
  REQUIRE(linf_norm(build_U_ap(zero, N, 0.0, geo.space)) == 0.0);

  ComplexField one(geo.envelope, Side::physical);
  for (auto& v : one.data()) v = 1.0;
  PacketOptions loose;
  loose.window_tolerance = 1.0;
  const auto U1 = build_U_ap(one, N, 0.0, geo.space, loose);
  REQUIRE_THAT(U1[0], WithinRel(2.0 / std::sqrt(3 * N * N * N), 1e-12));
  REQUIRE_THROWS_AS(build_U_ap(one, N, 0.0, geo.space), ResolutionError);
  REQUIRE_THROWS_AS(build_U_ap(one, N, 0.0, SpaceGrid(geo.space.length(), 64), loose), PreconditionError);

  // Direct quadrature of the formula with the analytic envelope.
  const auto u0 = gaussian_envelope(geo.envelope, 0.05, 2.0);
  const auto U = build_U_ap(u0, N, 0.0, geo.space);
  double direct = 0.0, dev = 0.0;
  for (std::size_t j = 0; j < geo.space.points(); ++j) {
    const double x = geo.space.x(j);
    const double z = (x / sc.a - geo.envelope.length() / 2) / 2.0;
    const double f = sc.P * std::cos(N * x) * 0.05 * std::exp(-z * z);
    direct += f * f;
    dev = std::max(dev, std::abs(f - U[j]));
  }
  direct = std::sqrt(direct * geo.space.spacing());
  REQUIRE_THAT(l2_norm(U), WithinRel(direct, 1e-3));
  REQUIRE(dev < 1e-11 * linf_norm(U));
  REQUIRE_THAT(l2_norm(U), WithinRel(sc.P * std::sqrt(sc.a / 2) * l2_norm(u0), 1e-3));

  // The interpolating path on a sub-window agrees with the spectral placement.
  const double t = 0.37;
  const auto nls = envelope_run(geo, 0.05, 1.0, 0.5, 0.01, 1);
  const auto Ut = to_spectral(build_U_ap(nls, N, t, geo.space));
  const SpaceGrid part(geo.space.length() * 0.5, 8000);
  const auto Up = build_U_ap(nls.spectrum(nls.index_of(t)), N, t, part, loose);
  double worst = 0.0;
  for (std::size_t j = 0; j < part.points(); j += 301) worst = std::max(worst, std::abs(Up[j] - interpolate(Ut, part.x(j)).real()));
  REQUIRE(worst < 1e-11 * linf_norm(U) * 10);
}

TEST_CASE("modulation builder") {
  SpaceGrid g(16 * pi, 256);
  const double c = 8 * pi;
  const auto u = sample(g, [&](double x) { return cd(std::exp(-(x - c) * (x - c) / 4), 0.0); });
  const auto id = modulation_build(1.0, 0.0, 1.0, 0.0, u, 0.5, 0.0, 256);
  REQUIRE(linf_norm(id - u) < 1e-14);

  const auto shifted = modulation_build(1.0, 0.0, 1.0, 3.7, u, 0.5);
  REQUIRE(shifted.grid() == g);
  REQUIRE_THAT(sobolev_norm(shifted, 0.5), WithinRel(sobolev_norm(u, 0.5), 1e-10));
  for (std::size_t j = 0; j < g.points(); ++j) {
    const double z = g.x(j) - 3.7 - c;
    REQUIRE(std::abs(shifted[j] - std::exp(-z * z / 4)) < 1e-10);
  }

  double lo = 1e300, hi = 0;
  for (int e = 4; e <= 8; ++e) {
    const double M = std::pow(2.0, e);
    const auto v = modulation_build(1.0, M, 1.0, 0.0, u, 0.5);
    const double ratio = sobolev_norm(v, 0.5) / (std::pow(M, 0.5) * sobolev_norm(u, 0.5));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  INFO("ratio range " << lo << " .. " << hi);
  REQUIRE(hi / lo < 1.5);

  const auto dilated = modulation_build(2.0, 6.25, 2.0, 0.0, u, 0.0);
  REQUIRE_THAT(dilated.grid().length(), WithinRel(32 * pi, 1e-15));
  REQUIRE_THAT(l2_norm(dilated), WithinRel(2.0 * std::sqrt(2.0) * l2_norm(u), 1e-12));
  REQUIRE_THROWS_WITH(modulation_build(1.0, 0.125, 1.0, 0.0, u, 0.5), Catch::Matchers::ContainsSubstring("case (i)"));
  REQUIRE_THROWS_WITH(modulation_build(1.0, 1.0, 1.0, 0.0, u, -0.5, 0.2), Catch::Matchers::ContainsSubstring("case (ii)"));
  REQUIRE_NOTHROW(modulation_build(1.0, 1.0, 1.0, 0.0, u, -0.5, 0.5));
  REQUIRE_THROWS_AS(modulation_build(1.0, 1.2345, 1.0, 0.0, u, 0.5), PreconditionError);
}

TEST_CASE("rescaling") {
  SpaceGrid g(2 * pi, 64);
  const auto f = sample_real(g, [](double x) { return std::cos(x) + 0.3 * std::sin(3 * x); });
  REQUIRE(linf_norm(rescale(f, 1.0) - f) == 0.0);
  for (double lambda : {0.5, 2.0, 7.3}) {
    const auto r = rescale(f, lambda);
    REQUIRE_THAT(l2_norm(r), WithinRel(std::sqrt(lambda) * l2_norm(f), 1e-10));
    ComplexField mode(g, Side::spectral);
    const long k = 5;
    mode[g.slot(k)] = 1.0;
    const auto rm = rescale(mode, lambda);
    const auto p = to_physical(rm);
    for (std::size_t j = 0; j < p.size(); j += 7) {
      const double x = rm.grid().x(j);
      REQUIRE(std::abs(p[j] - lambda * std::polar(1.0, lambda * k * x)) < 1e-12 * lambda);
    }
    for (double s : {-0.2, 0.0, 0.75})
      REQUIRE_THAT(sobolev_norm(rm, s) / sobolev_norm(mode, s),
                   WithinRel(std::sqrt(lambda) * japanese_pow(lambda * k, s) / japanese_pow(double(k), s), 1e-12));
  }
  const auto r2 = rescale(f, 2.0, SpaceGrid(2 * pi, 64));
  REQUIRE(std::abs(r2[0] - 2.0 * f[0]) < 1e-12);
  REQUIRE_THROWS_AS(rescale(f, 40.0, SpaceGrid(2 * pi, 64)), PreconditionError);
  const auto ri = rescale(f, 1.5, SpaceGrid(2 * pi / 1.5 * 1.25, 128));
  const double x = ri.grid().x(17);
  REQUIRE_THAT(ri[17], WithinAbs(1.5 * (std::cos(1.5 * x) + 0.3 * std::sin(4.5 * x)), 1e-10));

  const auto traj = evolve_fifth_mkdv(f, EquationCoeffs::zero(), 0.1, 0.01);
  const auto rt = rescale(traj, 2.0);
  REQUIRE_THAT(rt.times().back(), WithinRel(0.1 / 32, 1e-15));
  REQUIRE_THAT(rt.grid().length(), WithinRel(pi, 1e-15));
}

TEST_CASE("residual of the zero envelope vanishes") {
  const auto geo = packet_geometry(8.0, 24.0, 64);
  ComplexField zero(geo.envelope, Side::spectral);
  PacketResidual r(geo, 1.0);
  REQUIRE(linf_norm(r(zero, 0.3)) == 0.0);
  for (const auto& e : error_terms(zero, geo, 0.3)) REQUIRE(linf_norm(e) == 0.0);
  REQUIRE(error_terms(zero, geo, 0.3).size() == 7);
}

TEST_CASE("linear residual decays like N^-4") {
  std::vector<double> Ns{8, 16, 32}, sup;
  for (double N : Ns) {
    const auto geo = packet_geometry(N, 24.0, 64);
    const auto nls = envelope_run(geo, 0.05, 0.0, 1.0, 0.01, 25);
    PacketResidual r(geo, 0.0);
    double m = 0.0;
    for (std::size_t i = 0; i < nls.size(); ++i)
      m = std::max(m, linf_norm(real_from_spectrum(r(nls.spectrum(i), nls.time(i)))));
    sup.push_back(m);
  }
  const double slope = fit_slope(Ns, sup);
  INFO("sup residual " << sup[0] << " " << sup[1] << " " << sup[2] << " slope " << slope);
  REQUIRE(slope <= -3.5);
}

TEST_CASE("residual matches its expansion and the listed terms scale as printed") {
  std::vector<double> Ns{8, 16, 32}, e1, e7ratio, carrier_band, full;
  for (double N : Ns) {
    const auto geo = packet_geometry(N, 24.0, 64);
    const auto nls = envelope_run(geo, 0.05, 1.0, 1.0, 0.01, 50);
    PacketResidual r(geo, 1.0);
    double s1 = 0, sb = 0, sf = 0, worst_e7 = 0;
    for (std::size_t i = 0; i < nls.size(); ++i) {
      const double t = nls.time(i);
      const auto& u = nls.spectrum(i);
      const auto E = error_terms(u, geo, t);
      s1 = std::max(s1, sobolev_norm(E[0], 0.75));
      const auto p = detail::envelope_products(u);
      const double e7_expect = std::pow(N, -1.5) * std::sqrt(geo.scales.a) * l2_norm(p.h);
      worst_e7 = std::max(worst_e7, std::abs(l2_norm(E[6]) / e7_expect - 1));
      const auto norms = error_term_norms(u, geo, t, 1.0);
      if (N >= 16) REQUIRE(norms.mismatch < 0.05);
      REQUIRE(norms.mismatch < 1e-6);
      const auto e = r(u, t);
      sb = std::max(sb, band_sobolev(e, 0.75, 0.0, 2 * N));
      sf = std::max(sf, sobolev_norm(e, 0.75));
    }
    REQUIRE(worst_e7 < 1e-3);
    e1.push_back(s1);
    carrier_band.push_back(sb);
    full.push_back(sf);
  }
  const double slope_e1 = fit_slope(Ns, e1);
  const double slope_band = fit_slope(Ns, carrier_band);
  const double slope_full = fit_slope(Ns, full);
  INFO("E1 slope " << slope_e1 << " carrier band slope " << slope_band << " full slope " << slope_full);
  REQUIRE(std::abs(slope_e1 - (-2.5)) <= 0.5);
  REQUIRE(slope_band <= -2.0);
  REQUIRE(slope_full > -1.0);
}

TEST_CASE("space-time residual window") {
  const double N = 8.0;
  const auto geo = packet_geometry(N, 24.0, 64);
  const auto nls = envelope_run(geo, 0.05, 1.0, 0.2, 0.01, 5);
  const SpaceTimeGrid window(geo.space, 0.0, 0.2, 4);
  const auto E = residual_direct(nls, N, window);
  PacketResidual r(geo, 1.0);
  const auto e = real_from_spectrum(r(nls.spectrum(nls.index_of(0.1)), 0.1));
  for (std::size_t ix = 0; ix < geo.space.points(); ix += 97) REQUIRE(E(2, ix) == e[ix]);
  REQUIRE_THROWS_AS(residual_direct(nls, N, SpaceTimeGrid(geo.space, 0.0, 0.2, 3)), PreconditionError);
  REQUIRE_THROWS_AS(residual_direct(nls, N, SpaceTimeGrid(SpaceGrid(geo.space.length(), 256), 0.0, 0.2, 4)),
                    ResolutionError);
}
