#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "../errors.hpp"
#include "fft.hpp"
#include "grid.hpp"

namespace mkdv5 {

using cd = std::complex<double>;

enum class Side { physical, spectral };

inline const char* to_string(Side s) { return s == Side::physical ? "physical" : "spectral"; }

// Spectral samples are Fourier-series coefficients c_k = (1/n) sum_j f_j e^{-i k x_j}, so a constant 1
// maps to a unit delta and the L2 norm reads sqrt(L sum |c_k|^2) on the spectral side.
template <class T>
class Field {
 public:
  using value_type = T;

  Field() = default;
  Field(const SpaceGrid& grid, Side side) : grid_(grid), side_(side), data_(grid.points()) {}
  Field(const SpaceGrid& grid, Side side, std::vector<T> data) : grid_(grid), side_(side), data_(std::move(data)) {
    if (data_.size() != grid_.points()) throw UsageError("Field: sample count does not match grid");
  }

  const SpaceGrid& grid() const { return grid_; }
  Side side() const { return side_; }
  std::size_t size() const { return data_.size(); }
  T& operator[](std::size_t j) { return data_[j]; }
  const T& operator[](std::size_t j) const { return data_[j]; }
  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

 private:
  SpaceGrid grid_;
  Side side_ = Side::physical;
  std::vector<T> data_;
};

using ComplexField = Field<cd>;
using RealField = Field<double>;

// Space-time samples stored time-major: entry (it, ix) at it * n + ix.
template <class T>
class SpaceTimeFieldT {
 public:
  SpaceTimeFieldT() = default;
  SpaceTimeFieldT(const SpaceTimeGrid& grid, Side side) : grid_(grid), side_(side), data_(grid.size()) {}

  const SpaceTimeGrid& grid() const { return grid_; }
  Side side() const { return side_; }
  std::size_t size() const { return data_.size(); }
  T& operator()(std::size_t it, std::size_t ix) { return data_[it * grid_.space().points() + ix]; }
  const T& operator()(std::size_t it, std::size_t ix) const { return data_[it * grid_.space().points() + ix]; }
  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

 private:
  SpaceTimeGrid grid_;
  Side side_ = Side::physical;
  std::vector<T> data_;
};

using SpaceTimeField = SpaceTimeFieldT<cd>;
using SpaceTimeRealField = SpaceTimeFieldT<double>;

inline ComplexField to_spectral(const ComplexField& f) {
  if (f.side() != Side::physical) throw UsageError("to_spectral: field is already spectral");
  ComplexField out(f.grid(), Side::spectral, f.data());
  const std::size_t n = f.size();
  fft::forward(out.data().data(), n);
  const double inv = 1.0 / static_cast<double>(n);
  for (auto& v : out.data()) v *= inv;
  return out;
}

inline ComplexField to_physical(const ComplexField& f) {
  if (f.side() != Side::spectral) throw UsageError("to_physical: field is already physical");
  ComplexField out(f.grid(), Side::physical, f.data());
  fft::backward(out.data().data(), f.size());
  return out;
}

inline ComplexField to_spectral(const RealField& f) {
  if (f.side() != Side::physical) throw UsageError("to_spectral: real fields are stored physically");
  const std::size_t n = f.size();
  std::vector<cd> half(n / 2 + 1);
  fft::real_forward(f.data().data(), half.data(), n);
  ComplexField out(f.grid(), Side::spectral);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k <= n / 2; ++k) out[k] = half[k] * inv;
  for (std::size_t k = 1; k < n / 2; ++k) out[n - k] = std::conj(out[k]);
  return out;
}

inline ComplexField as_complex(const RealField& f) {
  ComplexField out(f.grid(), f.side());
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = f[j];
  return out;
}

inline ComplexField ensure_spectral(const ComplexField& f) {
  return f.side() == Side::spectral ? f : to_spectral(f);
}

inline ComplexField ensure_physical(const ComplexField& f) {
  return f.side() == Side::physical ? f : to_physical(f);
}

// Physical real samples of a spectrum assumed Hermitian; only modes 0..n/2 are read.
inline RealField real_from_spectrum(const ComplexField& spec) {
  if (spec.side() != Side::spectral) throw UsageError("real_from_spectrum: expects a spectral field");
  const std::size_t n = spec.size();
  std::vector<cd> half(spec.data().begin(), spec.data().begin() + static_cast<long>(n / 2 + 1));
  RealField out(spec.grid(), Side::physical);
  fft::real_backward(half.data(), out.data().data(), n);
  return out;
}

inline RealField real_part(const ComplexField& f) {
  const ComplexField p = ensure_physical(f);
  RealField out(p.grid(), Side::physical);
  for (std::size_t j = 0; j < p.size(); ++j) out[j] = p[j].real();
  return out;
}

inline double conjugate_symmetry_defect(const ComplexField& spec) {
  if (spec.side() != Side::spectral) throw UsageError("conjugate_symmetry_defect: expects a spectral field");
  const std::size_t n = spec.size();
  double defect = std::abs(spec[0].imag()) + std::abs(spec[n / 2].imag());
  for (std::size_t k = 1; k < n / 2; ++k) defect = std::max(defect, std::abs(spec[k] - std::conj(spec[n - k])));
  return defect;
}

inline double l2_norm(const ComplexField& f) {
  double acc = 0.0;
  for (const auto& v : f.data()) acc += std::norm(v);
  const double w = f.side() == Side::physical ? f.grid().spacing() : f.grid().length();
  return std::sqrt(acc * w);
}

inline double l2_norm(const RealField& f) {
  double acc = 0.0;
  for (double v : f.data()) acc += v * v;
  return std::sqrt(acc * f.grid().spacing());
}

inline double linf_norm(const ComplexField& f) {
  const ComplexField p = ensure_physical(f);
  double m = 0.0;
  for (const auto& v : p.data()) m = std::max(m, std::abs(v));
  return m;
}

inline double linf_norm(const RealField& f) {
  double m = 0.0;
  for (double v : f.data()) m = std::max(m, std::abs(v));
  return m;
}

template <class T>
Field<T> operator-(const Field<T>& a, const Field<T>& b) {
  if (!(a.grid() == b.grid()) || a.side() != b.side()) throw UsageError("field difference: grid or side mismatch");
  Field<T> out(a.grid(), a.side());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] - b[j];
  return out;
}

template <class T>
Field<T> operator+(const Field<T>& a, const Field<T>& b) {
  if (!(a.grid() == b.grid()) || a.side() != b.side()) throw UsageError("field sum: grid or side mismatch");
  Field<T> out(a.grid(), a.side());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] + b[j];
  return out;
}

template <class T, class S>
Field<T> operator*(S scale, const Field<T>& a) {
  Field<T> out(a.grid(), a.side());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = scale * a[j];
  return out;
}

template <class F>
ComplexField sample(const SpaceGrid& grid, F&& f) {
  ComplexField out(grid, Side::physical);
  for (std::size_t j = 0; j < grid.points(); ++j) out[j] = f(grid.x(j));
  return out;
}

template <class F>
RealField sample_real(const SpaceGrid& grid, F&& f) {
  RealField out(grid, Side::physical);
  for (std::size_t j = 0; j < grid.points(); ++j) out[j] = f(grid.x(j));
  return out;
}

}  // namespace mkdv5
