#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "../errors.hpp"

namespace mkdv5 {

// Periodic grid on [0, L) with n samples. Spectral arrays use FFT ordering:
// slot j holds mode j for j < n/2 and mode j - n otherwise.
class SpaceGrid {
 public:
  SpaceGrid() = default;
  SpaceGrid(double length, std::size_t points) : length_(length), points_(points) {
    if (!(length > 0.0) || !std::isfinite(length)) throw UsageError("SpaceGrid: length must be positive");
    if (points < 8 || points % 2 != 0) throw UsageError("SpaceGrid: points must be even and >= 8");
  }

  double length() const { return length_; }
  std::size_t points() const { return points_; }
  double spacing() const { return length_ / static_cast<double>(points_); }
  double x(std::size_t j) const { return length_ * static_cast<double>(j) / static_cast<double>(points_); }
  double dk() const { return 2.0 * std::numbers::pi / length_; }

  long mode(std::size_t j) const {
    const long n = static_cast<long>(points_);
    const long jj = static_cast<long>(j);
    return jj < n / 2 ? jj : jj - n;
  }
  std::size_t slot(long mode) const {
    const long n = static_cast<long>(points_);
    return static_cast<std::size_t>(mode >= 0 ? mode : mode + n);
  }
  double wavenumber(std::size_t j) const { return dk() * static_cast<double>(mode(j)); }
  std::size_t nyquist_slot() const { return points_ / 2; }
  long max_mode() const { return static_cast<long>(points_ / 2) - 1; }
  double k_max() const { return dk() * static_cast<double>(max_mode()); }

  std::vector<double> wavenumbers() const {
    std::vector<double> k(points_);
    for (std::size_t j = 0; j < points_; ++j) k[j] = wavenumber(j);
    return k;
  }

  bool operator==(const SpaceGrid&) const = default;

  std::string describe() const {
    return "periodic L=" + std::to_string(length_) + " n=" + std::to_string(points_);
  }

 private:
  double length_ = 2.0 * std::numbers::pi;
  std::size_t points_ = 8;
};

// Smallest even n >= max(8, minimum) whose only prime factors are 2, 3 and 5.
inline std::size_t fast_even_size(std::size_t minimum) {
  for (std::size_t n = std::max<std::size_t>(8, minimum + minimum % 2);; n += 2) {
    std::size_t r = n;
    for (std::size_t p : {2u, 3u, 5u})
      while (r % p == 0) r /= p;
    if (r == 1) return n;
  }
}

// Uniform samples t0 + j T / m, j < m, treated as one period of length T for the time transform.
class SpaceTimeGrid {
 public:
  SpaceTimeGrid() = default;
  SpaceTimeGrid(SpaceGrid space, double t0, double extent, std::size_t time_points)
      : space_(space), t0_(t0), extent_(extent), time_points_(time_points) {
    if (!(extent > 0.0)) throw UsageError("SpaceTimeGrid: time extent must be positive");
    if (time_points < 1) throw UsageError("SpaceTimeGrid: need at least one time sample");
  }

  const SpaceGrid& space() const { return space_; }
  double t0() const { return t0_; }
  double time_extent() const { return extent_; }
  std::size_t time_points() const { return time_points_; }
  double dt() const { return extent_ / static_cast<double>(time_points_); }
  double time(std::size_t j) const { return t0_ + extent_ * static_cast<double>(j) / static_cast<double>(time_points_); }

  long time_mode(std::size_t j) const {
    const long m = static_cast<long>(time_points_);
    const long jj = static_cast<long>(j);
    return jj < (m + 1) / 2 ? jj : jj - m;
  }
  double frequency(std::size_t j) const {
    return 2.0 * std::numbers::pi / extent_ * static_cast<double>(time_mode(j));
  }
  std::size_t size() const { return time_points_ * space_.points(); }

  bool operator==(const SpaceTimeGrid&) const = default;

  std::string describe() const {
    return space_.describe() + " t0=" + std::to_string(t0_) + " T=" + std::to_string(extent_) +
           " m=" + std::to_string(time_points_);
  }

 private:
  SpaceGrid space_;
  double t0_ = 0.0;
  double extent_ = 1.0;
  std::size_t time_points_ = 1;
};

// Cell-centred grid in sheared frequency coordinates (xi, mu = tau - xi^5) over one window
// [xi_lo, xi_hi] x [mu_lo, mu_hi]; the mirrored window (-xi, -mu) is implied.
struct ShearedGrid {
  double xi_lo = 0.0;
  double xi_hi = 1.0;
  std::size_t n_xi = 16;
  double mu_lo = -1.0;
  double mu_hi = 1.0;
  std::size_t n_mu = 16;

  double dxi() const { return (xi_hi - xi_lo) / static_cast<double>(n_xi); }
  double dmu() const { return (mu_hi - mu_lo) / static_cast<double>(n_mu); }
  double xi(std::size_t i) const { return xi_lo + (static_cast<double>(i) + 0.5) * dxi(); }
  double mu(std::size_t j) const { return mu_lo + (static_cast<double>(j) + 0.5) * dmu(); }
  std::size_t cells() const { return n_xi * n_mu; }
};

}  // namespace mkdv5
