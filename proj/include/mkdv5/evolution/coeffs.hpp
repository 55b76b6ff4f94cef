#pragma once

#include <cmath>
#include <string>

namespace mkdv5 {

// F(u) = c1 (u^3)_xxx + c2 u u_x u_xx + c3 u^2 u_xxx + c4 (u_x)^3 + c0 u^4 u_x, and the solvers integrate
// u_t = u_xxxxx - F(u). c4 is only needed to write the integrable equation in its monomial form.
struct EquationCoeffs {
  double c1 = 1.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c0 = 0.0;
  double c4 = 0.0;

  bool linear() const { return c1 == 0.0 && c2 == 0.0 && c3 == 0.0 && c0 == 0.0 && c4 == 0.0; }
  bool quintic() const { return c0 != 0.0; }
  bool needs_ux() const { return c2 != 0.0 || c4 != 0.0 || c0 != 0.0; }

  // Coefficient of the integral of u (u_x)^3 in d/dt of the mass; zero means the mass is conserved.
  double mass_defect() const { return -3.0 * c1 - c2 + 3.0 * c3 + c4; }

  static EquationCoeffs zero() { return {0.0, 0.0, 0.0, 0.0, 0.0}; }
  static EquationCoeffs cubic_derivative(double c1 = 1.0) { return {c1, 0.0, 0.0, 0.0, 0.0}; }

  // u_t - u_xxxxx - 30 u^4 u_x + 10 u^2 u_xxx + 10 u_x^3 + 40 u u_x u_xx = 0.
  static EquationCoeffs integrable() { return {0.0, 40.0, 10.0, -30.0, 10.0}; }

  // The same equation regrouped with (u^3)_xxx = 3u^2 u_xxx + 18 u u_x u_xx + 6 u_x^3:
  // 6 c1 = 10, 3 c1 + c3 = 10, 18 c1 + c2 = 40.
  static EquationCoeffs integrable_regrouped() { return {5.0 / 3.0, 10.0, 5.0, -30.0, 0.0}; }

  bool operator==(const EquationCoeffs&) const = default;
};

}  // namespace mkdv5
