#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace mkdv5 {

// h = xi1^5 + xi2^5 + xi3^5 with xi3 = -(xi1 + xi2), in factored form. Every partial result is invariant
// under swapping the arguments and flips sign exactly under negating both, so the symmetries hold bitwise.
inline double resonance_h(double xi1, double xi2) {
  const double p = xi1 * xi2;
  const double s = xi1 + xi2;
  const double q = (xi1 * xi1 + xi2 * xi2) + p;
  return ((-5.0 * p) * s) * q;
}

template <class T>
T resonance_h_expanded(T xi1, T xi2) {
  const T xi3 = -(xi1 + xi2);
  auto p5 = [](T x) { return x * x * x * x * x; };
  return p5(xi1) + p5(xi2) + p5(xi3);
}

// |h| / (N_max^4 N_min) with N_j = |xi_j|.
inline double resonance_ratio(double xi1, double xi2) {
  std::array<double, 3> n{std::abs(xi1), std::abs(xi2), std::abs(xi1 + xi2)};
  std::sort(n.begin(), n.end());
  const double nmax = n[2];
  return std::abs(resonance_h(xi1, xi2)) / (nmax * nmax * nmax * nmax * n[0]);
}

struct ResonanceReport {
  std::size_t samples = 0;
  double ratio_min = std::numeric_limits<double>::infinity();
  double ratio_max = 0.0;
  double lower = 1.0 / 32.0;
  double upper = 32.0;
  bool pass = false;
};

inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Random (xi1, xi2) with N_med >= 1 and magnitudes spread over [2^-6, 2^12]; N_max ~ N_med holds on the
// hyperplane automatically.
inline ResonanceReport check_resonance_relation(std::size_t samples, std::uint64_t seed = 1) {
  ResonanceReport r;
  std::mt19937_64 rng(seed);
  while (r.samples < samples) {
    const double big = std::exp2(12.0 * uniform01(rng));
    const double small = big * std::exp2(-18.0 * uniform01(rng));
    const double xi1 = rng() & 1 ? big : -big;
    const double xi2 = (rng() & 1 ? small : -small) - xi1 * (uniform01(rng) < 0.5 ? 1.0 : 0.0);
    std::array<double, 3> n{std::abs(xi1), std::abs(xi2), std::abs(xi1 + xi2)};
    std::sort(n.begin(), n.end());
    if (n[1] < 1.0 || n[0] == 0.0) continue;
    const double q = resonance_ratio(xi1, xi2);
    r.ratio_min = std::min(r.ratio_min, q);
    r.ratio_max = std::max(r.ratio_max, q);
    ++r.samples;
  }
  r.pass = r.samples > 0 && r.ratio_min >= r.lower && r.ratio_max <= r.upper;
  return r;
}

}  // namespace mkdv5
