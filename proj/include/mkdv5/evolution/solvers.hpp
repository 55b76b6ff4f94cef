#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "../spectral_core/fft.hpp"
#include "../spectral_core/field.hpp"
#include "../spectral_core/spectral.hpp"
#include "coeffs.hpp"
#include "stepper.hpp"
#include "trajectory.hpp"

namespace mkdv5 {

struct EvolveOptions {
  Dealias dealias = Dealias::pad2;  // promoted to pad3 when a quintic term is present
  std::size_t record_every = 0;     // store every k-th step; 0 keeps the endpoints only
  bool store_states = true;         // false keeps only the first and last state
  std::function<void(double, const ComplexField&)> observer;  // called at every recorded step
  std::optional<double> carrier;    // slave the 3N harmonic band in the rotating frame
  double growth_guard = 1e6;
  double nls_sign = 1.0;            // +1: i u_t - u_xx + |u|^2 u = 0; -1 focusing; 0 linear
};

inline ComplexField linear_fifth_propagator(const ComplexField& u0, double t) {
  ComplexField s = ensure_spectral(u0);
  const auto& g = s.grid();
  for (std::size_t j = 0; j < s.size(); ++j) {
    const long double k = g.wavenumber(j);
    s[j] *= unit_phase(static_cast<long double>(t) * k * k * k * k * k);
  }
  return u0.side() == Side::spectral ? s : to_physical(s);
}

inline RealField linear_fifth_propagator(const RealField& u0, double t) {
  return real_from_spectrum(linear_fifth_propagator(to_spectral(u0), t));
}

namespace detail {

inline std::size_t step_count(double T, double dt) {
  if (!(dt > 0.0)) throw UsageError("evolve: dt must be positive");
  if (!(T >= 0.0)) throw UsageError("evolve: T must be non-negative");
  if (T == 0.0) return 0;
  return static_cast<std::size_t>(std::max(1.0, std::ceil(T / dt - 1e-9)));
}

inline ComplexField full_from_half(const SpaceGrid& g, const std::vector<cd>& half) {
  const std::size_t n = g.points();
  ComplexField out(g, Side::spectral);
  for (std::size_t k = 0; k < n / 2; ++k) out[k] = half[k];
  for (std::size_t k = 1; k < n / 2; ++k) out[n - k] = std::conj(half[k]);
  return out;
}

// -F(u) for the fifth-order family on a half spectrum (modes 0..n/2).
class MkdvNonlinearity {
 public:
  MkdvNonlinearity(const SpaceGrid& g, const EquationCoeffs& c, Dealias rule)
      : g_(g), c_(c), rule_(rule), n_(g.points()), m_(g.points() * padding_factor(rule)) {
    const std::size_t h = m_ / 2 + 1;
    spec_.resize(h);
    u_.resize(m_);
    ux_.resize(m_);
    uxx_.resize(m_);
    uxxx_.resize(m_);
    cube_.resize(m_);
    rest_.resize(m_);
    cube_hat_.resize(h);
    rest_hat_.resize(h);
    keep_ = rule == Dealias::truncate_half ? n_ / 4 : n_ / 2 - 1;
    k_.resize(n_ / 2 + 1);
    for (std::size_t j = 0; j <= n_ / 2; ++j) k_[j] = g.dk() * static_cast<double>(j);
  }

  void operator()(const std::vector<cd>& in, std::vector<cd>& out) {
    const bool want_ux = c_.needs_ux();
    const bool want_uxx = c_.c2 != 0.0;
    const bool want_uxxx = c_.c3 != 0.0;
    const bool want_rest = want_ux || want_uxxx;
    to_grid(in, 0, u_);
    if (want_ux) to_grid(in, 1, ux_);
    if (want_uxx) to_grid(in, 2, uxx_);
    if (want_uxxx) to_grid(in, 3, uxxx_);
    const double inv = 1.0 / static_cast<double>(m_);
    if (c_.c1 != 0.0) {
      for (std::size_t j = 0; j < m_; ++j) cube_[j] = u_[j] * u_[j] * u_[j];
      fft::real_forward(cube_.data(), cube_hat_.data(), m_);
    }
    if (want_rest) {
      for (std::size_t j = 0; j < m_; ++j) {
        const double u = u_[j];
        double r = 0.0;
        if (c_.c2 != 0.0) r += c_.c2 * u * ux_[j] * uxx_[j];
        if (c_.c3 != 0.0) r += c_.c3 * u * u * uxxx_[j];
        if (c_.c4 != 0.0) r += c_.c4 * ux_[j] * ux_[j] * ux_[j];
        if (c_.c0 != 0.0) r += c_.c0 * u * u * u * u * ux_[j];
        rest_[j] = r;
      }
      fft::real_forward(rest_.data(), rest_hat_.data(), m_);
    }
    for (std::size_t k = 0; k <= n_ / 2; ++k) {
      if (k > keep_) {
        out[k] = 0.0;
        continue;
      }
      cd f(0.0, 0.0);
      if (c_.c1 != 0.0) f += c_.c1 * ik_power(k_[k], 3) * cube_hat_[k] * inv;
      if (want_rest) f += rest_hat_[k] * inv;
      out[k] = -f;
    }
  }

 private:
  void to_grid(const std::vector<cd>& in, int order, std::vector<double>& phys) {
    std::fill(spec_.begin(), spec_.end(), cd(0.0, 0.0));
    for (std::size_t k = 0; k <= keep_; ++k) spec_[k] = order == 0 ? in[k] : in[k] * ik_power(k_[k], order);
    fft::real_backward(spec_.data(), phys.data(), m_);
  }

  SpaceGrid g_;
  EquationCoeffs c_;
  Dealias rule_;
  std::size_t n_, m_, keep_;
  std::vector<double> k_;
  std::vector<cd> spec_, cube_hat_, rest_hat_;
  std::vector<double> u_, ux_, uxx_, uxxx_, cube_, rest_;
};

// i sigma |u|^2 u on a full complex spectrum.
class NlsNonlinearity {
 public:
  NlsNonlinearity(const SpaceGrid& g, double sign, Dealias rule)
      : n_(g.points()), m_(g.points() * padding_factor(rule)), sign_(sign), rule_(rule), buf_(m_) {}

  void operator()(const std::vector<cd>& in, std::vector<cd>& out) {
    if (sign_ == 0.0) {
      std::fill(out.begin(), out.end(), cd(0.0, 0.0));
      return;
    }
    const long keep = rule_ == Dealias::truncate_half ? static_cast<long>(n_ / 4) : static_cast<long>(n_ / 2) - 1;
    std::fill(buf_.begin(), buf_.end(), cd(0.0, 0.0));
    for (long k = -keep; k <= keep; ++k)
      buf_[k >= 0 ? k : static_cast<long>(m_) + k] = in[k >= 0 ? k : static_cast<long>(n_) + k];
    fft::backward(buf_.data(), m_);
    const cd factor(0.0, sign_);
    for (auto& v : buf_) v = factor * std::norm(v) * v;
    fft::forward(buf_.data(), m_);
    const double inv = 1.0 / static_cast<double>(m_);
    std::fill(out.begin(), out.end(), cd(0.0, 0.0));
    for (long k = -keep; k <= keep; ++k)
      out[k >= 0 ? k : static_cast<long>(n_) + k] = buf_[k >= 0 ? k : static_cast<long>(m_) + k] * inv;
  }

 private:
  std::size_t n_, m_;
  double sign_;
  Dealias rule_;
  std::vector<cd> buf_;
};

inline double half_mass(const SpaceGrid& g, const std::vector<cd>& half) {
  double acc = std::norm(half[0]);
  for (std::size_t k = 1; k < half.size(); ++k) acc += 2.0 * std::norm(half[k]);
  return acc * g.length();
}

inline double full_mass(const SpaceGrid& g, const std::vector<cd>& c) {
  double acc = 0.0;
  for (const auto& v : c) acc += std::norm(v);
  return acc * g.length();
}

inline void check_growth(double mass, double mass0, double guard, double t) {
  if (!std::isfinite(mass))
    throw NumericalGuardError("solver produced non-finite values at t = " + std::to_string(t));
  if (mass0 > 0.0 && mass > guard * guard * mass0)
    throw NumericalGuardError("L2 norm grew by more than " + std::to_string(guard) + " at t = " + std::to_string(t) +
                              "; reduce dt");
}

}  // namespace detail

// Rotating frame used by the mKdV stepper: xi^5 everywhere, except that with a carrier N every
// harmonic band |xi - jN| <= N/2, j != 1, rotates at jN^5 + 5N^4 (xi - jN), the frequency at which the
// j-th harmonic of a packet travelling with group velocity 5N^4 is forced.
inline std::vector<double> mkdv_frame(const SpaceGrid& g, std::optional<double> carrier) {
  const std::size_t h = g.points() / 2 + 1;
  std::vector<double> frame(h);
  for (std::size_t k = 0; k < h; ++k) {
    const double xi = g.dk() * static_cast<double>(k);
    frame[k] = xi * xi * xi * xi * xi;
    if (carrier) {
      const double N = *carrier;
      const double j = std::round(xi / N);
      if (j != 1.0) frame[k] = j * std::pow(N, 5) + 5.0 * std::pow(N, 4) * (xi - j * N);
    }
  }
  return frame;
}

inline double suggest_mkdv_dt(const RealField& u0, const EquationCoeffs&) {
  const double umax = linf_norm(u0);
  const double kmax = u0.grid().k_max();
  const double denom = umax * umax * kmax * kmax * kmax + std::pow(umax, 4) * kmax;
  return denom > 0.0 ? 0.5 / denom : 1e-2;
}

inline Trajectory evolve_fifth_mkdv(const RealField& u0, const EquationCoeffs& coeffs, double T, double dt,
                                    const EvolveOptions& opt = {}) {
  const SpaceGrid& g = u0.grid();
  const std::size_t n = g.points();
  const std::size_t steps = detail::step_count(T, dt);
  const double h = steps > 0 ? T / static_cast<double>(steps) : dt;
  Dealias rule = opt.dealias;
  if (coeffs.quintic() && rule == Dealias::pad2) rule = Dealias::pad3;

  SolverMeta meta;
  meta.equation = "fifth_mkdv";
  meta.dt = h;
  meta.steps = steps;
  meta.dealias = rule;
  meta.frame = opt.carrier ? "slaved_third_harmonic" : "integrating_factor";
  meta.coeffs = coeffs;
  Trajectory traj(g, FieldKind::real, meta);

  const ComplexField s0 = to_spectral(u0);
  std::vector<cd> u(n / 2 + 1);
  const std::size_t keep = rule == Dealias::truncate_half ? n / 4 : n / 2 - 1;
  for (std::size_t k = 0; k <= keep; ++k) u[k] = s0[k];
  u[0] = cd(u[0].real(), 0.0);

  std::vector<double> omega(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const double xi = g.dk() * static_cast<double>(k);
    omega[k] = xi * xi * xi * xi * xi;
  }
  ExpRk4 stepper(omega, mkdv_frame(g, opt.carrier), h);
  detail::MkdvNonlinearity nonlinear(g, coeffs, rule);
  const double mass0 = detail::half_mass(g, u);
  std::vector<cd> linear_step(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) linear_step[k] = unit_phase(static_cast<long double>(omega[k]) * h);

  auto record = [&](double t, bool store) {
    ComplexField full = detail::full_from_half(g, u);
    if (opt.observer) opt.observer(t, full);
    if (store) traj.push(t, std::move(full));
  };
  record(0.0, true);
  for (std::size_t s = 1; s <= steps; ++s) {
    if (coeffs.linear())
      for (std::size_t k = 0; k <= n / 2; ++k) u[k] *= linear_step[k];
    else
      stepper.step(u, nonlinear);
    u[0] = cd(u[0].real(), 0.0);
    const double t = s == steps ? T : h * static_cast<double>(s);
    detail::check_growth(detail::half_mass(g, u), mass0, opt.growth_guard, t);
    const bool due = s == steps || (opt.record_every > 0 && s % opt.record_every == 0);
    if (due) record(t, opt.store_states || s == steps);
  }
  return traj;
}

inline Trajectory evolve_cubic_nls(const ComplexField& u0, double T, double dt, const EvolveOptions& opt = {}) {
  const ComplexField s0 = ensure_spectral(u0);
  const SpaceGrid& g = s0.grid();
  const std::size_t n = g.points();
  const std::size_t steps = detail::step_count(T, dt);
  const double h = steps > 0 ? T / static_cast<double>(steps) : dt;
  const Dealias rule = opt.dealias == Dealias::pad3 ? Dealias::pad2 : opt.dealias;

  SolverMeta meta;
  meta.equation = "cubic_nls";
  meta.dt = h;
  meta.steps = steps;
  meta.dealias = rule;
  meta.coeffs = EquationCoeffs::zero();
  meta.nls_sign = opt.nls_sign;
  Trajectory traj(g, FieldKind::complex, meta);

  const ComplexField clean = dealias(s0, rule == Dealias::truncate_half ? Dealias::truncate_half : Dealias::pad2);
  std::vector<cd> u = clean.data();
  std::vector<double> omega(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double eta = g.wavenumber(j);
    omega[j] = eta * eta;
  }
  ExpRk4 stepper(omega, omega, h);
  detail::NlsNonlinearity nonlinear(g, opt.nls_sign, rule);
  const double mass0 = detail::full_mass(g, u);

  auto record = [&](double t, bool store) {
    ComplexField f(g, Side::spectral, u);
    if (opt.observer) opt.observer(t, f);
    if (store) traj.push(t, std::move(f));
  };
  record(0.0, true);
  for (std::size_t s = 1; s <= steps; ++s) {
    stepper.step(u, nonlinear);
    const double t = s == steps ? T : h * static_cast<double>(s);
    detail::check_growth(detail::full_mass(g, u), mass0, opt.growth_guard, t);
    const bool due = s == steps || (opt.record_every > 0 && s % opt.record_every == 0);
    if (due) record(t, opt.store_states || s == steps);
  }
  return traj;
}

}  // namespace mkdv5
