#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "field.hpp"

namespace mkdv5 {

inline double japanese(double x) { return std::sqrt(1.0 + x * x); }

// Weight <xi>^{2s} evaluated without overflow for large |xi| and |s|.
inline double japanese_pow(double x, double p) { return std::pow(1.0 + x * x, 0.5 * p); }

inline double sobolev_norm(const ComplexField& f, double s) {
  const ComplexField c = ensure_spectral(f);
  const auto& g = c.grid();
  double acc = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) acc += japanese_pow(g.wavenumber(j), 2.0 * s) * std::norm(c[j]);
  return std::sqrt(acc * g.length());
}

inline double sobolev_norm(const RealField& f, double s) { return sobolev_norm(to_spectral(f), s); }

// Space-time coefficients c_{jk} = (1/(n m)) sum u(t_j, x_k) e^{-i(tau (t - t0) + xi x)}.
inline SpaceTimeField to_spectral(const SpaceTimeField& f) {
  if (f.side() != Side::physical) throw UsageError("to_spectral: space-time field is already spectral");
  SpaceTimeField result(f.grid(), Side::spectral);
  const std::size_t n = f.grid().space().points();
  const std::size_t m = f.grid().time_points();
  std::vector<cd> buf = f.data();
  fft::forward_2d(buf.data(), n, m);
  const double inv = 1.0 / static_cast<double>(n * m);
  for (std::size_t i = 0; i < buf.size(); ++i) result.data()[i] = buf[i] * inv;
  return result;
}

struct XsbResult {
  double value = 0.0;
  double truncation_fraction = 0.0;
  bool truncation_warning = false;
  std::string diagnostic;
};

// Weighted L2 of the space-time spectrum with weight <xi>^s <tau - xi^5>^b, Plancherel-normalized so
// that s = b = 0 gives the space-time L2 norm. The truncation estimate extrapolates the weighted energy
// of the two outermost tau bands geometrically beyond the grid.
inline XsbResult xsb_norm(const SpaceTimeField& f, double s, double b) {
  const SpaceTimeField c = f.side() == Side::spectral ? f : to_spectral(f);
  const auto& g = c.grid();
  const auto& sg = g.space();
  const std::size_t n = sg.points();
  const std::size_t m = g.time_points();
  double total = 0.0;
  const std::size_t bands = 8;
  std::vector<double> band(bands, 0.0);
  const double tau_max = std::max(1.0, static_cast<double>(m / 2));
  for (std::size_t it = 0; it < m; ++it) {
    const double tau = g.frequency(it);
    const double rel = std::abs(static_cast<double>(g.time_mode(it))) / tau_max;
    const std::size_t bidx = std::min(bands - 1, static_cast<std::size_t>(rel * static_cast<double>(bands)));
    for (std::size_t ix = 0; ix < n; ++ix) {
      const double xi = sg.wavenumber(ix);
      const double xi5 = xi * xi * xi * xi * xi;
      const double w = japanese_pow(xi, 2.0 * s) * japanese_pow(tau - xi5, 2.0 * b);
      const double e = w * std::norm(c(it, ix));
      total += e;
      band[bidx] += e;
    }
  }
  XsbResult r;
  r.value = std::sqrt(total * sg.length() * g.time_extent());
  if (total > 0.0 && m >= 2 * bands) {
    const double outer = band[bands - 1];
    const double inner = band[bands - 2];
    double tail = 0.0;
    if (inner > 0.0) {
      const double ratio = outer / inner;
      tail = ratio < 1.0 ? outer * ratio / (1.0 - ratio) : std::numeric_limits<double>::infinity();
    } else if (outer > 0.0) {
      tail = std::numeric_limits<double>::infinity();
    }
    r.truncation_fraction = tail / total;
    if (r.truncation_fraction > 0.01) {
      r.truncation_warning = true;
      r.diagnostic = "modulation weight truncated by the tau range: estimated tail fraction " +
                     std::to_string(r.truncation_fraction);
    }
  }
  return r;
}

// Values on the window grid.cells() and on its mirror image (-xi, -mu).
struct ShearedField {
  ShearedGrid grid;
  std::vector<cd> upper;
  std::vector<cd> lower;

  explicit ShearedField(const ShearedGrid& g) : grid(g), upper(g.cells()), lower(g.cells()) {}
  cd& at(bool mirrored, std::size_t i, std::size_t j) { return (mirrored ? lower : upper)[i * grid.n_mu + j]; }
  const cd& at(bool mirrored, std::size_t i, std::size_t j) const {
    return (mirrored ? lower : upper)[i * grid.n_mu + j];
  }
};

// ||<xi>^s <mu>^b f~||_{L2(dtau dxi)} by midpoint quadrature (the shear has unit Jacobian).
inline double xsb_norm(const ShearedField& f, double s, double b) {
  const auto& g = f.grid;
  double acc = 0.0;
  for (std::size_t i = 0; i < g.n_xi; ++i) {
    const double wx = japanese_pow(g.xi(i), 2.0 * s);
    for (std::size_t j = 0; j < g.n_mu; ++j) {
      const double w = wx * japanese_pow(g.mu(j), 2.0 * b);
      acc += w * (std::norm(f.at(false, i, j)) + std::norm(f.at(true, i, j)));
    }
  }
  return std::sqrt(acc * g.dxi() * g.dmu());
}

}  // namespace mkdv5
