#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "../errors.hpp"

namespace mkdv5 {

inline constexpr double s_lower = -7.0 / 24.0;
inline constexpr double s_upper = 0.75;

inline double auto_lambda(double N, double s) { return std::pow(N, (0.75 - s) / (0.5 + s)); }

struct WavePacketParams {
  double N = 16.0;
  double s = -0.2;
  double eps = 0.05;
  double delta = 5e-4;
  std::optional<double> lambda;  // derived from (N, s) when absent
  int K = 6;

  double lambda_value() const { return lambda ? *lambda : auto_lambda(N, s); }

  void validate(bool illposedness) const {
    if (!(N > 0.0)) throw PreconditionError("carrier N must be positive");
    if (!(eps > 0.0)) throw PreconditionError("amplitude eps must be positive");
    if (!(delta >= 0.0)) throw PreconditionError("perturbation delta must be non-negative");
    if (delta >= eps) throw PreconditionError("perturbation delta must be smaller than eps");
    if (lambda && !(*lambda > 0.0)) throw PreconditionError("lambda must be positive");
    if (K < 1) throw PreconditionError("envelope smoothness K must be positive");
    if (illposedness && !(s > s_lower && s < s_upper))
      throw PreconditionError("s = " + std::to_string(s) + " violates -7/24 < s < 3/4");
  }
};

// Amplitude, dilation and drift of the packet: U_ap = P Re e^{iNx} e^{iN^5 t} u(t, x/a + c t).
struct PacketScales {
  double N;
  double P;
  double a;
  double c;

  explicit PacketScales(double carrier)
      : N(carrier),
        P(2.0 / std::sqrt(3.0 * carrier * carrier * carrier)),
        a(std::sqrt(10.0 * carrier * carrier * carrier)),
        c(std::sqrt(2.5) * std::pow(carrier, 2.5)) {
    if (!(carrier > 0.0)) throw PreconditionError("carrier N must be positive");
  }
};

inline std::pair<double, double> change_of_variables(double t, double x, double N) {
  const PacketScales p(N);
  return {t, x / p.a + p.c * t};
}

inline std::pair<double, double> inverse_change_of_variables(double s, double y, double N) {
  const PacketScales p(N);
  return {s, p.a * (y - p.c * s)};
}

}  // namespace mkdv5
