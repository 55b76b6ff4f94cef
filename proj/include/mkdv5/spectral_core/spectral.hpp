#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "field.hpp"

namespace mkdv5 {

enum class Dealias {
  none,
  truncate_half,  // keep |k| <= n/4, the cheap rule
  pad2,           // products on a grid padded by 2, exact for cubic terms
  pad3,           // exact for quintic terms
};

inline const char* to_string(Dealias d) {
  switch (d) {
    case Dealias::none: return "none";
    case Dealias::truncate_half: return "truncate_half";
    case Dealias::pad2: return "pad2";
    case Dealias::pad3: return "pad3";
  }
  return "?";
}

inline std::size_t padding_factor(Dealias d) {
  switch (d) {
    case Dealias::pad2: return 2;
    case Dealias::pad3: return 3;
    default: return 1;
  }
}

inline cd ik_power(double k, int order) {
  cd s(1.0, 0.0);
  const cd ik(0.0, k);
  for (int m = 0; m < order; ++m) s *= ik;
  return s;
}

// Returns the derivative on the same side as the input.
inline ComplexField spectral_derivative(const ComplexField& f, int order) {
  if (order < 0) throw UsageError("spectral_derivative: order must be non-negative");
  ComplexField s = ensure_spectral(f);
  const auto& g = s.grid();
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (j == g.nyquist_slot() && order % 2 == 1) {
      s[j] = 0.0;
      continue;
    }
    s[j] *= ik_power(g.wavenumber(j), order);
  }
  return f.side() == Side::spectral ? s : to_physical(s);
}

inline RealField spectral_derivative(const RealField& f, int order) {
  ComplexField s = to_spectral(f);
  return real_from_spectrum(spectral_derivative(s, order));
}

// Zero the modes outside the retained band. The Nyquist mode is always dropped.
inline ComplexField dealias(const ComplexField& f, Dealias rule) {
  if (f.side() != Side::spectral) throw UsageError("dealias: expects a spectral field");
  ComplexField out = f;
  const auto& g = f.grid();
  const long cutoff = rule == Dealias::truncate_half ? static_cast<long>(g.points() / 4) : g.max_mode();
  for (std::size_t j = 0; j < out.size(); ++j) {
    const long m = g.mode(j);
    if (j == g.nyquist_slot() || std::abs(m) > cutoff) out[j] = 0.0;
  }
  return out;
}

// Spectrum (FFT order, length n) placed onto a grid of m >= n points, Nyquist dropped.
inline std::vector<cd> pad_spectrum(const std::vector<cd>& c, std::size_t m) {
  const std::size_t n = c.size();
  std::vector<cd> out(m, cd(0.0, 0.0));
  for (std::size_t j = 0; j < n / 2; ++j) out[j] = c[j];
  for (std::size_t j = n / 2 + 1; j < n; ++j) out[m - (n - j)] = c[j];
  return out;
}

inline std::vector<cd> truncate_spectrum(const std::vector<cd>& c, std::size_t n) {
  const std::size_t m = c.size();
  std::vector<cd> out(n, cd(0.0, 0.0));
  for (std::size_t j = 0; j < n / 2; ++j) out[j] = c[j];
  for (std::size_t j = n / 2 + 1; j < n; ++j) out[j] = c[m - (n - j)];
  return out;
}

// Pointwise product of spectral fields evaluated with the given rule; result is spectral on the
// original grid.
template <class Op>
ComplexField pointwise_spectral(const std::vector<const ComplexField*>& inputs, Dealias rule, Op&& op) {
  const auto& g = inputs.front()->grid();
  const std::size_t n = g.points();
  const std::size_t m = n * padding_factor(rule);
  std::vector<std::vector<cd>> phys;
  phys.reserve(inputs.size());
  for (const auto* in : inputs) {
    if (in->side() != Side::spectral || !(in->grid() == g)) throw UsageError("pointwise_spectral: bad input");
    std::vector<cd> c = in->data();
    if (rule == Dealias::truncate_half) c = dealias(*in, rule).data();
    std::vector<cd> p = pad_spectrum(c, m);
    fft::backward(p.data(), m);
    phys.push_back(std::move(p));
  }
  std::vector<cd> prod(m);
  std::vector<cd> args(inputs.size());
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t a = 0; a < inputs.size(); ++a) args[a] = phys[a][j];
    prod[j] = op(args);
  }
  fft::forward(prod.data(), m);
  const double inv = 1.0 / static_cast<double>(m);
  for (auto& v : prod) v *= inv;
  ComplexField out(g, Side::spectral, truncate_spectrum(prod, n));
  if (rule == Dealias::truncate_half) out = dealias(out, rule);
  return out;
}

inline ComplexField cube(const ComplexField& spec, Dealias rule = Dealias::pad2) {
  return pointwise_spectral({&spec}, rule, [](const std::vector<cd>& a) { return a[0] * a[0] * a[0]; });
}

// Trigonometric interpolant of a spectral field at an arbitrary point (periodic extension).
inline cd interpolate(const ComplexField& spec, double x) {
  const auto& g = spec.grid();
  cd acc(0.0, 0.0);
  for (std::size_t j = 0; j < spec.size(); ++j) {
    if (j == g.nyquist_slot()) continue;
    const double ph = g.wavenumber(j) * x;
    acc += spec[j] * cd(std::cos(ph), std::sin(ph));
  }
  return acc;
}

}  // namespace mkdv5
