#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "../evolution/stepper.hpp"
#include "../spectral_core/field.hpp"
#include "../spectral_core/grid.hpp"

namespace mkdv5 {

// Hypotheses of the high-frequency modulation estimate: M tau >= 1 when s >= 0, and sigma >= |s| with
// M^{1 + s/sigma} tau >= 1 when s < 0. A pure translation/dilation (M = 0) is always accepted.
inline void check_modulation_hypotheses(double M, double tau, double s, double sigma) {
  if (!(tau > 0.0)) throw PreconditionError("modulation: tau must be positive");
  if (M == 0.0) return;
  if (s >= 0.0) {
    if (!(M * tau >= 1.0))
      throw PreconditionError("modulation case (i), s >= 0: requires M*tau >= 1, got " + std::to_string(M * tau));
    return;
  }
  if (!(sigma >= -s)) throw PreconditionError("modulation case (ii), s < 0: requires sigma >= |s|");
  const double lhs = std::pow(M, 1.0 + s / sigma) * tau;
  if (!(lhs >= 1.0))
    throw PreconditionError("modulation case (ii), s < 0: requires M^(1+s/sigma)*tau >= 1, got " + std::to_string(lhs));
}

// v(x) = A e^{iMx} u((x - x0)/tau) on the period tau L, mapped exactly in spectral space. M must be a
// multiple of 2 pi/(tau L); points = 0 picks the smallest fast grid that holds the shifted band.
inline ComplexField modulation_build(double A, double M, double tau, double x0, const ComplexField& u, double s,
                                     double sigma = 0.0, std::size_t points = 0) {
  check_modulation_hypotheses(M, tau, s, sigma);
  const ComplexField us = ensure_spectral(u);
  const auto& g = us.grid();
  const double length = tau * g.length();
  const double jm = M * length / (2.0 * std::numbers::pi);
  const long shift = std::lround(jm);
  if (std::abs(jm - static_cast<double>(shift)) > 1e-9 * std::max(1.0, std::abs(jm)))
    throw PreconditionError("modulation: M is not commensurate with the dilated period");
  const std::size_t n = g.points();
  if (points == 0) points = fast_even_size(n + 2 * static_cast<std::size_t>(std::labs(shift)));
  const SpaceGrid out_grid(length, points);
  ComplexField out(out_grid, Side::spectral);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == g.nyquist_slot() || us[j] == cd(0.0, 0.0)) continue;
    const long m = g.mode(j);
    const long target = m + shift;
    if (std::labs(target) > out_grid.max_mode()) throw PreconditionError("modulation: output grid too coarse");
    const long double k = 2.0L * std::numbers::pi_v<long double> * m / static_cast<long double>(length);
    out[out_grid.slot(target)] = A * us[j] * unit_phase(-k * x0);
  }
  return u.side() == Side::spectral ? out : to_physical(out);
}

}  // namespace mkdv5
