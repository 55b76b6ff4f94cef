#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "../errors.hpp"

namespace mkdv5 {

using cd = std::complex<double>;

// e^{i angle} with the argument reduced in extended precision, so large phases such as xi^5 t keep
// their absolute accuracy.
inline cd unit_phase(long double angle) {
  constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  if (std::fabs(angle) < 1e6L) return std::polar(1.0, static_cast<double>(std::fmod(angle, two_pi)));
  const __float128 tp = static_cast<__float128>(6.283185307179586) + static_cast<__float128>(2.4492935982947064e-16);
  const __float128 a = static_cast<__float128>(angle);
  const auto q = static_cast<long long>(static_cast<long double>(angle / two_pi));
  const __float128 r = a - tp * static_cast<__float128>(q);
  return std::polar(1.0, static_cast<double>(r));
}

namespace detail {

// phi_1..phi_3 of z: (e^z - 1)/z, (e^z - 1 - z)/z^2, (e^z - 1 - z - z^2/2)/z^3.
inline void phi_functions(cd z, cd& p1, cd& p2, cd& p3) {
  if (std::abs(z) < 0.5) {
    p1 = p2 = p3 = 0.0;
    cd zj(1.0, 0.0);
    double fact1 = 1.0, fact2 = 2.0, fact3 = 6.0;
    for (int j = 0; j < 24; ++j) {
      p1 += zj / fact1;
      p2 += zj / fact2;
      p3 += zj / fact3;
      zj *= z;
      fact1 *= static_cast<double>(j + 2);
      fact2 *= static_cast<double>(j + 3);
      fact3 *= static_cast<double>(j + 4);
    }
    return;
  }
  const cd ez = std::exp(z);
  p1 = (ez - 1.0) / z;
  p2 = (ez - 1.0 - z) / (z * z);
  p3 = (ez - 1.0 - z - 0.5 * z * z) / (z * z * z);
}

}  // namespace detail

// Fourth-order exponential Runge-Kutta (Cox-Matthews) for diagonal systems u' = i omega u + N(u),
// written in a frame rotating mode-wise at frequency Omega. With Omega = omega every coefficient
// reduces to the classical integrating-factor RK4; choosing Omega near the frequency of a slaved
// harmonic keeps its forcing slow in the rotating frame.
class ExpRk4 {
 public:
  ExpRk4(const std::vector<double>& omega, const std::vector<double>& frame, double dt) : dt_(dt) {
    const std::size_t n = omega.size();
    if (frame.size() != n) throw UsageError("ExpRk4: frame and symbol sizes differ");
    e_.resize(n);
    e2_.resize(n);
    q_.resize(n);
    f1_.resize(n);
    f2_.resize(n);
    f3_.resize(n);
    r_.resize(n);
    rh_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const long double d = static_cast<long double>(omega[k]) - static_cast<long double>(frame[k]);
      const cd z(0.0, static_cast<double>(d * dt));
      e_[k] = unit_phase(d * dt);
      e2_[k] = unit_phase(d * dt / 2);
      cd p1, p2, p3, h1, h2, h3;
      detail::phi_functions(z, p1, p2, p3);
      detail::phi_functions(0.5 * z, h1, h2, h3);
      q_[k] = 0.5 * dt * h1;
      f1_[k] = dt * (p1 - 3.0 * p2 + 4.0 * p3);
      f2_[k] = dt * (p2 - 2.0 * p3);
      f3_[k] = dt * (-p2 + 4.0 * p3);
      r_[k] = unit_phase(static_cast<long double>(frame[k]) * dt);
      rh_[k] = unit_phase(static_cast<long double>(frame[k]) * dt / 2);
    }
    nv_.resize(n);
    na_.resize(n);
    nb_.resize(n);
    nc_.resize(n);
    a_.resize(n);
    b_.resize(n);
    c_.resize(n);
    tmp_.resize(n);
  }

  double dt() const { return dt_; }

  // nonlinear(in, out) evaluates N on a lab-frame spectrum.
  template <class Nonlinear>
  void step(std::vector<cd>& u, Nonlinear&& nonlinear) {
    const std::size_t n = u.size();
    nonlinear(u, nv_);
    for (std::size_t k = 0; k < n; ++k) a_[k] = e2_[k] * u[k] + q_[k] * nv_[k];
    stage(a_, rh_, na_, nonlinear);
    for (std::size_t k = 0; k < n; ++k) b_[k] = e2_[k] * u[k] + q_[k] * na_[k];
    stage(b_, rh_, nb_, nonlinear);
    for (std::size_t k = 0; k < n; ++k) c_[k] = e2_[k] * a_[k] + q_[k] * (2.0 * nb_[k] - nv_[k]);
    stage(c_, r_, nc_, nonlinear);
    for (std::size_t k = 0; k < n; ++k) {
      const cd v = e_[k] * u[k] + f1_[k] * nv_[k] + 2.0 * f2_[k] * (na_[k] + nb_[k]) + f3_[k] * nc_[k];
      u[k] = r_[k] * v;
    }
  }

 private:
  template <class Nonlinear>
  void stage(const std::vector<cd>& v, const std::vector<cd>& rot, std::vector<cd>& out, Nonlinear&& nonlinear) {
    const std::size_t n = v.size();
    for (std::size_t k = 0; k < n; ++k) tmp_[k] = rot[k] * v[k];
    nonlinear(tmp_, out);
    for (std::size_t k = 0; k < n; ++k) out[k] *= std::conj(rot[k]);
  }

  double dt_;
  std::vector<cd> e_, e2_, q_, f1_, f2_, f3_, r_, rh_;
  std::vector<cd> nv_, na_, nb_, nc_, a_, b_, c_, tmp_;
};

}  // namespace mkdv5
