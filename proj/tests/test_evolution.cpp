#include <catch_amalgamated.hpp>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "mkdv5/evolution.hpp"
#include "mkdv5/spectral_core.hpp"

using namespace mkdv5;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

RealField smooth_data(const SpaceGrid& g, double target_l2) {
  auto u = sample_real(g, [](double x) { return std::cos(x) + 0.5 * std::sin(2 * x + 0.3) + 0.25 * std::cos(3 * x - 1.0); });
  const double scale = target_l2 / l2_norm(u);
  for (auto& v : u.data()) v *= scale;
  return u;
}

double max_diff(const ComplexField& a, const ComplexField& b) { return linf_norm(to_physical(a) - to_physical(b)); }

// Direct evaluation of the integrable equation's nonlinearity in monomial form, built only from
// spectral derivatives and pointwise products on a finely padded grid.
RealField integrable_monomials(const RealField& u) {
  const auto& g = u.grid();
  const std::size_t fine = 4 * g.points();
  SpaceGrid gf(g.length(), fine);
  ComplexField sf(gf, Side::spectral, pad_spectrum(to_spectral(u).data(), fine));
  auto d = [&](int m) { return real_part(to_physical(spectral_derivative(sf, m))); };
  const auto u0 = d(0), u1 = d(1), u2 = d(2), u3 = d(3);
  RealField f(gf, Side::physical);
  for (std::size_t j = 0; j < fine; ++j)
    f[j] = -30 * std::pow(u0[j], 4) * u1[j] + 10 * u0[j] * u0[j] * u3[j] + 10 * std::pow(u1[j], 3) +
           40 * u0[j] * u1[j] * u2[j];
  ComplexField back(g, Side::spectral, truncate_spectrum(to_spectral(f).data(), g.points()));
  return real_from_spectrum(back);
}

RealField nonlinearity(const RealField& u, const EquationCoeffs& c) {
  const auto& g = u.grid();
  detail::MkdvNonlinearity nl(g, c, c.quintic() ? Dealias::pad3 : Dealias::pad2);
  const auto s = to_spectral(u);
  std::vector<cd> half(s.data().begin(), s.data().begin() + static_cast<long>(g.points() / 2 + 1));
  std::vector<cd> out(half.size());
  nl(half, out);
  for (auto& v : out) v = -v;
  return real_from_spectrum(detail::full_from_half(g, out));
}

}  // namespace

TEST_CASE("linear propagator examples") {
  SpaceGrid g(2.0 * pi, 256);
  const auto u0 = sample(g, [](double x) { return cd(std::exp(std::cos(x)), std::sin(2 * x)); });
  REQUIRE(max_diff(to_spectral(linear_fifth_propagator(u0, 0.0)), to_spectral(u0)) < 1e-14);

  for (long k : {1L, 5L, 17L, 40L}) {
    ComplexField s(g, Side::spectral);
    s[g.slot(k)] = 1.0;
    const auto out = linear_fifth_propagator(s, 1.0);
    const double kk = static_cast<double>(k);
    using big = boost::multiprecision::cpp_bin_float_50;
    const big two_pi = 2 * boost::math::constants::pi<big>();
    const big phase = fmod(big(std::pow(kk, 5)), two_pi);
    const cd expect = std::polar(1.0, phase.convert_to<double>());
    REQUIRE(std::abs(out[g.slot(k)] - expect) < 1e-12);
  }
  for (double t : {0.1, 1.0, 37.5}) REQUIRE_THAT(l2_norm(linear_fifth_propagator(u0, t)), WithinRel(l2_norm(u0), 1e-12));
}

TEST_CASE("mKdV solver with zero coefficients equals the linear propagator") {
  SpaceGrid g(2.0 * pi, 64);
  const auto u0 = smooth_data(g, 0.3);
  const auto traj = evolve_fifth_mkdv(u0, EquationCoeffs::zero(), 1.0, 1e-3);
  const auto lin = linear_fifth_propagator(u0, 1.0);
  REQUIRE(linf_norm(traj.real_state(traj.size() - 1) - lin) < 1e-10);
}

TEST_CASE("integrable preset matches the regrouped family and the monomial form") {
  SpaceGrid g(2.0 * pi, 64);
  const auto u = smooth_data(g, 0.8);
  const auto direct = integrable_monomials(u);
  const auto mono = nonlinearity(u, EquationCoeffs::integrable());
  const auto regrouped = nonlinearity(u, EquationCoeffs::integrable_regrouped());
  const double scale = linf_norm(direct);
  REQUIRE(linf_norm(mono - direct) < 1e-12 * scale);
  REQUIRE(linf_norm(regrouped - direct) < 1e-12 * scale);
  REQUIRE(EquationCoeffs::integrable().mass_defect() == 0.0);
  REQUIRE(EquationCoeffs::integrable_regrouped().mass_defect() == 0.0);
  REQUIRE(EquationCoeffs::integrable().c0 == -30.0);
}

TEST_CASE("integrable preset conserves mass") {
  SpaceGrid g(2.0 * pi, 64);
  const auto u0 = smooth_data(g, 0.1);
  const double dt = 2.5e-4;
  EvolveOptions opt;
  opt.record_every = 10;
  const auto traj = evolve_fifth_mkdv(u0, EquationCoeffs::integrable(), 0.1, dt, opt);
  const auto table = conserved_quantities(traj);
  REQUIRE(table.max_mass_drift < 1e-6);
  REQUIRE(traj.meta().dealias == Dealias::pad3);
}

TEST_CASE("mKdV states stay real") {
  SpaceGrid g(2.0 * pi, 64);
  const auto u0 = smooth_data(g, 0.5);
  EvolveOptions opt;
  opt.record_every = 5;
  const auto traj = evolve_fifth_mkdv(u0, {1.0, 0.5, -0.3, 0.2, 0.0}, 0.1, 1e-4, opt);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto p = traj.physical_state(i);
    double im = 0.0;
    for (const auto& v : p.data()) im = std::max(im, std::abs(v.imag()));
    REQUIRE(im < 1e-12);
  }
  const auto table = conserved_quantities(traj);
  REQUIRE(std::isfinite(table.max_mass_drift));
}

TEST_CASE("mKdV self-convergence is fourth order") {
  SpaceGrid g(2.0 * pi, 16);
  const auto u0 = smooth_data(g, 0.3);
  const EquationCoeffs c{1.0, 0.0, 0.0, 0.0, 0.0};
  const double T = 0.2;
  const auto ref = evolve_fifth_mkdv(u0, c, T, T / 16384).back();
  const auto e1 = max_diff(evolve_fifth_mkdv(u0, c, T, T / 1024).back(), ref);
  const auto e2 = max_diff(evolve_fifth_mkdv(u0, c, T, T / 2048).back(), ref);
  const double order = std::log2(e1 / e2);
  INFO("errors " << e1 << " " << e2 << " order " << order);
  REQUIRE(order >= 3.8);
  REQUIRE(order <= 4.6);
}

TEST_CASE("NLS constant solution") {
  SpaceGrid g(2.0 * pi, 16);
  const double a = 0.8;
  ComplexField u0(g, Side::physical);
  for (auto& v : u0.data()) v = a;
  const auto traj = evolve_cubic_nls(u0, 1.0, 1e-3);
  const auto u1 = traj.physical_state(traj.size() - 1);
  const cd expect = a * std::polar(1.0, a * a);
  for (const auto& v : u1.data()) REQUIRE(std::abs(v - expect) < 1e-10);

  EvolveOptions focusing;
  focusing.nls_sign = -1.0;
  const auto tf = evolve_cubic_nls(u0, 1.0, 1e-3, focusing);
  REQUIRE(std::abs(tf.physical_state(tf.size() - 1)[3] - a * std::polar(1.0, -a * a)) < 1e-10);
}

TEST_CASE("NLS zero data and mass conservation") {
  SpaceGrid g(40.0, 256);
  ComplexField zero(g, Side::physical);
  const auto tz = evolve_cubic_nls(zero, 0.5, 1e-2);
  REQUIRE(linf_norm(tz.back()) == 0.0);

  const auto u0 = sample(g, [](double y) {
    const double z = y - 20.0;
    return std::exp(-z * z / 4.0) * std::polar(1.2, 0.3 * z);
  });
  EvolveOptions opt;
  opt.record_every = 50;
  const auto traj = evolve_cubic_nls(u0, 1.0, 1e-3, opt);
  const auto table = conserved_quantities(traj);
  REQUIRE(table.max_mass_drift < 1e-8);
  REQUIRE(table.max_energy_drift < 1e-6);
}

TEST_CASE("NLS self-convergence is fourth order") {
  SpaceGrid g(20.0, 64);
  const auto u0 = sample(g, [](double y) {
    const double z = y - 10.0;
    return cd(2.0 * std::exp(-z * z / 2.0), 0.0);
  });
  const double T = 1.0;
  const auto ref = evolve_cubic_nls(u0, T, 1e-4).back();
  const auto e1 = max_diff(evolve_cubic_nls(u0, T, 0.02).back(), ref);
  const auto e2 = max_diff(evolve_cubic_nls(u0, T, 0.01).back(), ref);
  const double order = std::log2(e1 / e2);
  INFO("errors " << e1 << " " << e2 << " order " << order);
  REQUIRE(order >= 3.8);
}

TEST_CASE("blow-up guard aborts runaway integration") {
  SpaceGrid g(2.0 * pi, 64);
  const auto u0 = smooth_data(g, 3.0);
  REQUIRE_THROWS_AS(evolve_fifth_mkdv(u0, EquationCoeffs::cubic_derivative(), 5.0, 0.05), NumericalGuardError);
}

TEST_CASE("linear evolution has zero drift") {
  SpaceGrid g(2.0 * pi, 64);
  const auto u0 = smooth_data(g, 0.7);
  EvolveOptions opt;
  opt.record_every = 1;
  const auto traj = evolve_fifth_mkdv(u0, EquationCoeffs::zero(), 0.5, 0.05, opt);
  REQUIRE(traj.size() == 11);
  REQUIRE(conserved_quantities(traj).max_mass_drift < 1e-12);
}

TEST_CASE("slaved-harmonic frame agrees with the integrating factor at small steps") {
  const double N = 4.0;
  SpaceGrid g(2.0 * pi * 8, 512);
  const auto u0 = sample_real(g, [&](double x) {
    const double z = (x - g.length() / 2) / 6.0;
    return 0.2 * std::exp(-z * z) * std::cos(N * x);
  });
  const auto c = EquationCoeffs::cubic_derivative();
  EvolveOptions slaved;
  slaved.carrier = N;
  const auto a = evolve_fifth_mkdv(u0, c, 0.05, 1e-5).back();
  const auto b = evolve_fifth_mkdv(u0, c, 0.05, 1e-3, slaved).back();
  const auto b4 = evolve_fifth_mkdv(u0, c, 0.05, 2.5e-4, slaved).back();
  REQUIRE(max_diff(b, b4) < 5e-8);
  REQUIRE(max_diff(a, b4) < 1e-5);
}

TEST_CASE("trajectory invariants") {
  SpaceGrid g(1.0, 8);
  Trajectory t(g, FieldKind::real, {});
  ComplexField s(g, Side::spectral);
  t.push(0.0, s);
  REQUIRE_THROWS_AS(t.push(0.0, s), UsageError);
  s[1] = cd(0.0, 1.0);
  REQUIRE_THROWS_AS(t.push(1.0, s), UsageError);
  REQUIRE_THROWS_AS(t.index_of(3.0), PreconditionError);
}
