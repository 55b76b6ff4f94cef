#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "../errors.hpp"
#include "../spectral_core/grid.hpp"
#include "../spectral_core/norms.hpp"

namespace mkdv5 {

inline double kpv_width(double N) { return std::pow(N, -1.5); }

// Sheared window exactly covering A = [N, N + N^{-3/2}] x [-1, 1] with the given cells per side.
inline ShearedGrid kpv_grid(double N, std::size_t cells = 64) {
  return ShearedGrid{N, N + kpv_width(N), cells, -1.0, 1.0, cells};
}

// chi_A + chi_{-A} in sheared coordinates; cells cut by the boundary of A carry their covered fraction.
inline ShearedField build_kpv_indicator(double N, const ShearedGrid& g) {
  const double h = kpv_width(N);
  if (g.xi_lo > N || g.xi_hi < N + h || g.mu_lo > -1.0 || g.mu_hi < 1.0)
    throw PreconditionError("sheared grid does not cover A = [N, N + N^-3/2] x [-1, 1]");
  if (h / g.dxi() < 16.0 - 1e-9 || 2.0 / g.dmu() < 16.0 - 1e-9)
    throw ResolutionError("A is under-resolved: " + std::to_string(h / g.dxi()) + " x " +
                          std::to_string(2.0 / g.dmu()) + " cells, need 16 per side");
  auto overlap = [](double a, double b, double lo, double hi) { return std::max(0.0, std::min(b, hi) - std::max(a, lo)); };
  ShearedField f(g);
  for (std::size_t i = 0; i < g.n_xi; ++i) {
    const double a = g.xi_lo + static_cast<double>(i) * g.dxi();
    const double fx = overlap(a, a + g.dxi(), N, N + h) / g.dxi();
    for (std::size_t j = 0; j < g.n_mu; ++j) {
      const double c = g.mu_lo + static_cast<double>(j) * g.dmu();
      const double v = fx * overlap(c, c + g.dmu(), -1.0, 1.0) / g.dmu();
      f.at(false, i, j) = v;
      f.at(true, i, j) = std::conj(f.at(false, i, j));
    }
  }
  return f;
}

inline double sheared_area(const ShearedField& f) {
  double s = 0.0;
  for (std::size_t k = 0; k < f.grid.cells(); ++k) s += f.upper[k].real() + f.lower[k].real();
  return s * f.grid.dxi() * f.grid.dmu();
}

namespace detail {

// Cubic B-spline box*box*box of the unit boxes on [-1, 1].
inline double box3(double m) {
  m = std::abs(m);
  if (m < 1.0) return 3.0 - m * m;
  if (m < 3.0) return 0.5 * (3.0 - m) * (3.0 - m);
  return 0.0;
}

// p^5 + q^5 + r^5 - (p + q + r)^5.
inline double quintic_defect(double p, double q, double r) {
  return -5.0 * (p + q) * (q + r) * (r + p) * (p * p + q * q + r * r + p * q + q * r + r * p);
}

struct KpvBand {
  int sign3;       // sign of the third factor's carrier
  double mult;     // number of sign arrangements
  double xi_base;  // output frequency of the corner (N, N, sign3 N)
  double lo, hi;   // output frequency offsets covered by the sumset
};

inline std::vector<KpvBand> kpv_bands(double N) {
  const double h = kpv_width(N);
  return {{-1, 3.0, N, -h, 2.0 * h}, {1, 1.0, 3.0 * N, 0.0, 3.0 * h}};
}

}  // namespace detail

struct KpvOptions {
  std::size_t nd = 96;   // midpoints per side of the (xi1, xi2) offset square
  std::size_t nxi = 96;  // output frequency samples per band
  double dmu = 0.25;     // modulation step of the output
};

// (f~ * f~ * f~)(tau, xi) at tau = xi^5 + mu for xi > 0: the tau convolutions of the three unit-height
// strips are done exactly (a cubic B-spline in mu - phi), the (xi1, xi2) integral by midpoints.
inline double kpv_convolution_at(double N, double xi, double mu, std::size_t nd = 192) {
  const double h = kpv_width(N);
  const double w = (h / static_cast<double>(nd)) * (h / static_cast<double>(nd));
  double acc = 0.0;
  for (const auto& band : detail::kpv_bands(N)) {
    const double off = xi - band.xi_base;
    if (off < band.lo || off > band.hi) continue;
    double sum = 0.0;
    for (std::size_t a = 0; a < nd; ++a) {
      const double d1 = (static_cast<double>(a) + 0.5) * h / static_cast<double>(nd);
      for (std::size_t c = 0; c < nd; ++c) {
        const double d2 = (static_cast<double>(c) + 0.5) * h / static_cast<double>(nd);
        const double d3 = band.sign3 > 0 ? off - d1 - d2 : d1 + d2 - off;
        if (d3 < 0.0 || d3 > h) continue;
        sum += detail::box3(mu - detail::quintic_defect(N + d1, N + d2, band.sign3 * (N + d3)));
      }
    }
    acc += band.mult * w * sum;
  }
  return acc;
}

// Per output-frequency sample: xi, its cell width and S(xi) = sum_mu <mu>^{2(b-1)} |f~*f~*f~|^2 dmu.
struct KpvNumeratorSamples {
  double N = 0.0;
  double b = 0.0;
  std::vector<double> xi, dxi, weight;
};

inline KpvNumeratorSamples kpv_numerator_samples(double N, double b, const KpvOptions& opt = {}) {
  const double h = kpv_width(N);
  const std::size_t nd = opt.nd;
  const double dd = h / static_cast<double>(nd);
  const double w = dd * dd;
  KpvNumeratorSamples out;
  out.N = N;
  out.b = b;
  std::vector<double> ph;
  std::vector<double> F;
  for (const auto& band : detail::kpv_bands(N)) {
    const double dx = (band.hi - band.lo) / static_cast<double>(opt.nxi);
    for (std::size_t k = 0; k < opt.nxi; ++k) {
      const double off = band.lo + (static_cast<double>(k) + 0.5) * dx;
      ph.clear();
      for (std::size_t a = 0; a < nd; ++a) {
        const double d1 = (static_cast<double>(a) + 0.5) * dd;
        for (std::size_t c = 0; c < nd; ++c) {
          const double d2 = (static_cast<double>(c) + 0.5) * dd;
          const double d3 = band.sign3 > 0 ? off - d1 - d2 : d1 + d2 - off;
          if (d3 < 0.0 || d3 > h) continue;
          ph.push_back(detail::quintic_defect(N + d1, N + d2, band.sign3 * (N + d3)));
        }
      }
      double S = 0.0;
      if (!ph.empty()) {
        const auto [lo_it, hi_it] = std::minmax_element(ph.begin(), ph.end());
        const double mu0 = *lo_it - 3.0;
        const auto count = static_cast<std::size_t>(std::ceil((*hi_it + 3.0 - mu0) / opt.dmu)) + 1;
        F.assign(count, 0.0);
        for (double p : ph) {
          const auto k0 = static_cast<std::size_t>(std::max(0.0, std::ceil((p - 3.0 - mu0) / opt.dmu)));
          for (std::size_t m = k0; m < count; ++m) {
            const double mu = mu0 + static_cast<double>(m) * opt.dmu;
            if (mu - p >= 3.0) break;
            F[m] += detail::box3(mu - p);
          }
        }
        for (std::size_t m = 0; m < count; ++m) {
          const double mu = mu0 + static_cast<double>(m) * opt.dmu;
          const double v = band.mult * w * F[m];
          S += japanese_pow(mu, 2.0 * (b - 1.0)) * v * v;
        }
        S *= opt.dmu;
      }
      out.xi.push_back(band.xi_base + off);
      out.dxi.push_back(dx);
      out.weight.push_back(S);
    }
  }
  return out;
}

struct KpvRatio {
  double ratio = 0.0;
  double numerator = 0.0;    // ||d_x^3 (f^3)||_{X^{s,b-1}}
  double denominator = 0.0;  // ||f||_{X^{s,b}}
};

// With the transform normalised as f~ = int e^{-i(x xi + t tau)} f, (f^3)~ = (2 pi)^{-2} f~*f~*f~. The
// negative frequencies mirror the positive ones.
inline KpvRatio trilinear_ratio(const KpvNumeratorSamples& num, double s, std::size_t indicator_cells = 256) {
  const double N = num.N;
  double n2 = 0.0;
  for (std::size_t k = 0; k < num.xi.size(); ++k) {
    const double x = num.xi[k];
    n2 += std::pow(x, 6) * japanese_pow(x, 2.0 * s) * num.weight[k] * num.dxi[k];
  }
  const double c = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);
  KpvRatio r;
  r.numerator = c * std::sqrt(2.0 * n2);
  r.denominator = xsb_norm(build_kpv_indicator(N, kpv_grid(N, indicator_cells)), s, num.b);
  r.ratio = r.numerator / (r.denominator * r.denominator * r.denominator);
  return r;
}

inline KpvRatio trilinear_ratio(double N, double s, double b, const KpvOptions& opt = {}) {
  return trilinear_ratio(kpv_numerator_samples(N, b, opt), s);
}

}  // namespace mkdv5
