#include <catch_amalgamated.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <random>

#include "mkdv5/multiplier.hpp"

using namespace mkdv5;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

double slope_log2(const std::vector<double>& x, const std::vector<double>& y) {
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

// Brute-force triple convolution of the indicator of A and -A at (xi^5 + mu, xi): the strips are
// intersected directly in tau (inner integral as an interval length, outer by midpoints) with the
// quintic powers formed in long double.
double convolution_oracle(double N, double xi, double mu, int nd = 256, int ntau = 400) {
  using ld = long double;
  const ld h = std::pow(static_cast<ld>(N), -1.5L);
  const ld x = xi;
  const ld tau = x * x * x * x * x + mu;
  auto p5 = [](ld v) { return v * v * v * v * v; };
  ld total = 0;
  struct Arr {
    int s1, s2, s3;
  };
  // sign patterns of (xi1, xi2, xi3) whose sum can reach xi
  const Arr arrs[] = {{1, 1, -1}, {1, -1, 1}, {-1, 1, 1}, {1, 1, 1}};
  const ld dd = h / nd;
  for (const auto& ar : arrs) {
    for (int a = 0; a < nd; ++a)
      for (int c = 0; c < nd; ++c) {
        const ld x1 = ar.s1 * (N + (a + 0.5L) * dd);
        const ld x2 = ar.s2 * (N + (c + 0.5L) * dd);
        const ld x3 = x - x1 - x2;
        const ld m3 = ar.s3 * x3 - N;
        if (m3 < 0 || m3 > h) continue;
        const ld c1 = p5(x1), c2 = p5(x2), c3 = p5(x3);
        ld inner = 0;
        for (int k = 0; k < ntau; ++k) {
          const ld t1 = c1 - 1 + (k + 0.5L) * 2 / ntau;
          const ld lo = std::max(c2 - 1, tau - t1 - c3 - 1);
          const ld hi = std::min(c2 + 1, tau - t1 - c3 + 1);
          if (hi > lo) inner += hi - lo;
        }
        total += inner * 2 / ntau;
      }
  }
  return static_cast<double>(total * dd * dd);
}

}  // namespace

TEST_CASE("resonance function values") {
  REQUIRE(resonance_h(1, -1) == 0.0);
  REQUIRE(resonance_h(2, -1) == 30.0);
  REQUIRE(resonance_h(1, 1) == -30.0);
  for (double N : {1.0, 8.0, 512.0}) REQUIRE_THAT(resonance_ratio(N, N), WithinRel(30.0 / 16.0, 1e-15));
  REQUIRE(std::abs(resonance_h(1.0, -1.0 + 1e-9)) < 1e-7);
}

TEST_CASE("factored resonance against a 50-digit expansion") {
  std::mt19937_64 rng(7);
  double worst = 0;
  for (int i = 0; i < 100000; ++i) {
    const double a = (uniform01(rng) * 2 - 1) * 1000;
    const double b = (uniform01(rng) * 2 - 1) * 1000;
    const big exact = resonance_h_expanded<big>(big(a), big(b));
    if (exact == 0) continue;
    const double rel = static_cast<double>(abs((big(resonance_h(a, b)) - exact) / exact));
    worst = std::max(worst, rel);
  }
  REQUIRE(worst < 1e-10);
}

TEST_CASE("resonance symmetries are exact") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    const double a = (uniform01(rng) * 2 - 1) * std::exp2(20 * uniform01(rng) - 10);
    const double b = (uniform01(rng) * 2 - 1) * std::exp2(20 * uniform01(rng) - 10);
    REQUIRE(resonance_h(a, b) == resonance_h(b, a));
    REQUIRE(resonance_h(a, b) == -resonance_h(-a, -b));
  }
}

TEST_CASE("resonance relation on admissible cones") {
  const auto r = check_resonance_relation(100000, 3);
  REQUIRE(r.samples == 100000);
  REQUIRE(r.pass);
  // on the hyperplane the ratio is 5(1-t)(1-t+t^2) with t = N_min/N_max in (0, 1/2]
  REQUIRE(r.ratio_min >= 1.875 * (1 - 1e-12));
  REQUIRE(r.ratio_max <= 5.0 * (1 + 1e-12));
  REQUIRE(r.ratio_max > 4.0);
  REQUIRE(r.ratio_min < 2.5);
}

TEST_CASE("block bound cases") {
  DyadicBlockSpec a{{16, 16, 16}, std::pow(16.0, 5), {1, 1, std::pow(16.0, 5)}};
  auto ba = block_bound(a);
  REQUIRE(ba.which == BlockCase::coherent_pp);
  REQUIRE(ba.value == 1.0 / 256.0);

  DyadicBlockSpec b{{1, 64, 64}, std::pow(64.0, 4), {std::pow(64.0, 4), 1, 1}};
  auto bb = block_bound(b);
  REQUIRE(bb.which == BlockCase::coherent_pm);
  REQUIRE_THAT(bb.value, WithinRel(8.0 / 4096.0, 1e-15));

  DyadicBlockSpec c{{1, 1, 1}, 1, {1, 64, 64}};
  auto bc = block_bound(c);
  REQUIRE(bc.which == BlockCase::generic);
  REQUIRE(bc.value == 1.0);

  DyadicBlockSpec bad{{1, 1, 16}, 16, {1, 1, 16}};
  REQUIRE_THROWS_WITH(block_bound(bad), Catch::Matchers::ContainsSubstring("N_med ~ N_max"));
  DyadicBlockSpec bad_l{{1, 1, 1}, 1, {1, 1, 1024}};
  REQUIRE_THROWS_WITH(block_bound(bad_l), Catch::Matchers::ContainsSubstring("L_max ~ max(H, L_med)"));
  DyadicBlockSpec bad_h{{4, 4, 4}, 2, {1, 1, 2}};
  REQUIRE_THROWS_WITH(block_bound(bad_h), Catch::Matchers::ContainsSubstring("H ~ N_max^4 N_min"));
}

TEST_CASE("block estimates vanish off the admissible relations") {
  REQUIRE(estimate_block_norm({{4, 4, 4}, 2, {1, 1, 2}}).value == 0.0);
  REQUIRE(estimate_block_norm({{1, 1, 16}, 16, {1, 1, 16}}).value == 0.0);
  REQUIRE(estimate_block_norm({{1, 1, 1}, 1, {1, 1, 1024}}).value == 0.0);
  REQUIRE(estimate_block_norm({{1, 1, 1}, 1024, {1, 1, 1}}).value == 0.0);
}

TEST_CASE("block estimate against the closed form") {
  DyadicBlockSpec s{{4, 4, 8}, 65536, {1, 1, 65536}};
  REQUIRE(s.admissible());
  const auto e = estimate_block_norm(s);
  const auto b = block_bound(s);
  REQUIRE(b.which == BlockCase::coherent_pp);
  REQUIRE(e.value > 0.0);
  REQUIRE(e.value <= block_safety_factor * b.value);

  DyadicBlockSpec t{{1, 1, 2}, 128, {4, 8, 256}};
  REQUIRE(estimate_block_norm(t).value <= block_safety_factor * block_bound(t).value);
}

TEST_CASE("block estimate refines monotonically") {
  DyadicBlockSpec s{{0.5, 1, 1}, 4, {2, 4, 8}};
  double prev = 0;
  for (std::size_t trials : {1, 5, 20, 80, 400}) {
    BlockEstimateOptions o;
    o.trials = trials;
    const double v = estimate_block_norm(s, o).value;
    REQUIRE(v >= prev);
    prev = v;
  }
  REQUIRE(prev > 0);
  const auto full = estimate_block_norm(s);
  for (std::size_t i = 1; i < full.history.size(); ++i) REQUIRE(full.history[i] >= full.history[i - 1]);
  REQUIRE(full.rounds <= 10000);
}

TEST_CASE("block estimator capacity") {
  BlockEstimateOptions o;
  o.max_triples = 1000;
  REQUIRE_THROWS_AS(estimate_block_norm({{4, 4, 8}, 65536, {1, 1, 65536}}, o), CapacityError);
}

TEST_CASE("block regression set") {
  const auto a = block_regression_set();
  const auto b = block_regression_set();
  REQUIRE(a.size() == 100);
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].admissible());
    REQUIRE(a[i].N == b[i].N);
    REQUIRE(a[i].L == b[i].L);
    REQUIRE(a[i].H == b[i].H);
  }
  for (std::size_t i = 0; i < 5; ++i) {
    const auto e = estimate_block_norm(a[i]);
    REQUIRE(e.value > 0);
    REQUIRE(e.value <= block_safety_factor * block_bound(a[i]).value);
  }
}

TEST_CASE("counterexample indicator") {
  for (double N : {16.0, 128.0}) {
    const auto f = build_kpv_indicator(N, kpv_grid(N, 32));
    REQUIRE_THAT(sheared_area(f), WithinRel(4 * std::pow(N, -1.5), 1e-9));
    for (std::size_t k = 0; k < f.grid.cells(); ++k) REQUIRE(f.lower[k] == std::conj(f.upper[k]));
  }
  ShearedGrid wide{15.99, 16.02, 40, -1.5, 1.5, 24};
  const auto f = build_kpv_indicator(16, wide);
  REQUIRE_THAT(sheared_area(f), WithinRel(4 * std::pow(16.0, -1.5), 1e-9));
  REQUIRE_THROWS_AS(build_kpv_indicator(16, kpv_grid(16, 8)), ResolutionError);
  REQUIRE_THROWS_AS(build_kpv_indicator(16, ShearedGrid{16.001, 17, 64, -1, 1, 64}), PreconditionError);
}

TEST_CASE("counterexample Bourgain norm") {
  const double s = 0.25, b = 0.51;
  std::vector<double> scaled;
  for (double N : {16.0, 32.0, 64.0, 128.0, 256.0, 512.0}) {
    const double h = std::pow(N, -1.5);
    using boost::math::quadrature::gauss_kronrod;
    const double ix = gauss_kronrod<double, 31>::integrate([&](double x) { return std::pow(1 + x * x, s); }, N, N + h);
    const double im = gauss_kronrod<double, 31>::integrate([&](double m) { return std::pow(1 + m * m, b); }, -1.0, 1.0);
    const double exact = std::sqrt(2 * ix * im);
    const double v = xsb_norm(build_kpv_indicator(N, kpv_grid(N, 256)), s, b);
    REQUIRE_THAT(v, WithinRel(exact, 1e-4));
    scaled.push_back(v / std::pow(N, s - 0.75));
  }
  const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
  REQUIRE(*hi / *lo < 1.05);
}

TEST_CASE("quintic defect factorisation") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double p = (uniform01(rng) * 2 - 1) * 50, q = (uniform01(rng) * 2 - 1) * 50, r = (uniform01(rng) * 2 - 1) * 50;
    const big bp(p), bq(q), br(r);
    const big e = pow(bp, 5) + pow(bq, 5) + pow(br, 5) - pow(bp + bq + br, 5);
    const double got = detail::quintic_defect(p, q, r);
    REQUIRE(static_cast<double>(abs(big(got) - e)) <= 1e-12 * std::max(1.0, static_cast<double>(abs(e))) + 1e-6);
  }
}

TEST_CASE("triple convolution against brute force") {
  const double N = 16, h = std::pow(N, -1.5);
  // points inside the support: mu sits on the phase of an actual interacting triple
  const double pts[][3] = {{0.3, 0.6, 0.5}, {0.7, 0.8, 1.2}, {0.1, 0.2, -0.3}, {0.5, 0.5, 0.9}};
  for (const auto& p : pts) {
    const double d1 = p[0] * h, d2 = p[1] * h, off = p[2] * h;
    const double phase = detail::quintic_defect(N + d1, N + d2, -(N + d1 + d2 - off));
    for (double dmu : {0.0, 1.0}) {
      const double ref = convolution_oracle(N, N + off, phase + dmu);
      REQUIRE(ref > 0);
      REQUIRE_THAT(kpv_convolution_at(N, N + off, phase + dmu), WithinRel(ref, 0.01));
    }
  }
  REQUIRE(kpv_convolution_at(N, N + 0.5 * h, -1e3) == 0.0);
  REQUIRE(convolution_oracle(N, N + 0.5 * h, -1e3) == 0.0);
  const double lib3 = kpv_convolution_at(N, 3 * N + 1.5 * h, detail::quintic_defect(N + h / 2, N + h / 2, N + h / 2));
  const double ref3 =
      convolution_oracle(N, 3 * N + 1.5 * h, detail::quintic_defect(N + h / 2, N + h / 2, N + h / 2));
  REQUIRE(ref3 > 0);
  REQUIRE_THAT(lib3, WithinRel(ref3, 0.02));
}

TEST_CASE("triple convolution lower bound is stable in N") {
  std::vector<double> c;
  for (double N : {16.0, 64.0, 512.0}) c.push_back(kpv_convolution_at(N, N + 0.5 * std::pow(N, -1.5), 0.0) * N * N * N);
  REQUIRE(c[0] > 1.0);
  for (double v : c) REQUIRE_THAT(v, WithinRel(c[0], 0.05));
}

TEST_CASE("counterexample ratio slopes") {
  const std::vector<double> Ns{16, 32, 64, 128, 256, 512};
  std::vector<double> r34, r14, r0;
  for (double N : Ns) {
    const auto ns = kpv_numerator_samples(N, 0.51);
    r34.push_back(trilinear_ratio(ns, 0.75).ratio);
    r14.push_back(trilinear_ratio(ns, 0.25).ratio);
    r0.push_back(trilinear_ratio(ns, 0.0).ratio);
  }
  REQUIRE(std::abs(slope_log2(Ns, r34)) <= 0.15);
  REQUIRE_THAT(slope_log2(Ns, r14), WithinAbs(1.0, 0.15));
  REQUIRE_THAT(slope_log2(Ns, r0), WithinAbs(1.5, 0.15));
}

TEST_CASE("counterexample ratio under grid refinement") {
  for (double N : {16.0, 128.0}) {
    const double coarse = trilinear_ratio(N, 0.25, 0.51).ratio;
    const double fine = trilinear_ratio(N, 0.25, 0.51, {192, 192, 0.125}).ratio;
    REQUIRE_THAT(fine, WithinRel(coarse, 0.02));
  }
}
