#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "../evolution/trajectory.hpp"
#include "../spectral_core/field.hpp"
#include "../spectral_core/spectral.hpp"

namespace mkdv5 {

// lambda f(lambda x): on the period L/lambda with the same point count the Fourier coefficients keep
// their indices and are multiplied by lambda.
inline ComplexField rescale(const ComplexField& f, double lambda) {
  if (!(lambda > 0.0)) throw PreconditionError("rescale: lambda must be positive");
  const SpaceGrid g(f.grid().length() / lambda, f.grid().points());
  ComplexField out(g, f.side());
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = lambda * f[j];
  return out;
}

inline RealField rescale(const RealField& f, double lambda) {
  if (!(lambda > 0.0)) throw PreconditionError("rescale: lambda must be positive");
  const SpaceGrid g(f.grid().length() / lambda, f.grid().points());
  RealField out(g, f.side());
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = lambda * f[j];
  return out;
}

// Resampled onto an arbitrary target grid: spectrally exact when the target period is a whole number of
// rescaled periods, trigonometric interpolation otherwise.
inline ComplexField rescale(const ComplexField& f, double lambda, const SpaceGrid& target) {
  const ComplexField r = ensure_spectral(rescale(f, lambda));
  const auto& g = r.grid();
  double peak = 0.0;
  for (const auto& v : r.data()) peak = std::max(peak, std::abs(v));
  for (std::size_t j = 0; j < r.size(); ++j)
    if (std::abs(r[j]) > 1e-14 * peak && std::abs(g.wavenumber(j)) > target.k_max())
      throw PreconditionError("rescale: frequency " + std::to_string(g.wavenumber(j)) +
                              " overflows the target grid (k_max = " + std::to_string(target.k_max()) + ")");
  const double q = target.length() / g.length();
  const long qi = std::lround(q);
  ComplexField out(target, Side::spectral);
  if (qi >= 1 && std::abs(q - static_cast<double>(qi)) <= 1e-12 * q) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      const long m = g.mode(j) * qi;
      if (j == g.nyquist_slot() || std::labs(m) > target.max_mode()) continue;
      out[target.slot(m)] = r[j];
    }
  } else {
    ComplexField phys(target, Side::physical);
    for (std::size_t j = 0; j < target.points(); ++j) phys[j] = interpolate(r, target.x(j));
    out = to_spectral(phys);
  }
  return f.side() == Side::spectral ? out : to_physical(out);
}

inline RealField rescale(const RealField& f, double lambda, const SpaceGrid& target) {
  return real_from_spectrum(rescale(to_spectral(f), lambda, target));
}

// U^lambda(t, x) = lambda U(lambda^5 t, lambda x): stored times shrink by lambda^5.
inline Trajectory rescale(const Trajectory& traj, double lambda) {
  if (!(lambda > 0.0)) throw PreconditionError("rescale: lambda must be positive");
  const double l5 = std::pow(lambda, 5);
  SolverMeta meta = traj.meta();
  meta.dt /= l5;
  const SpaceGrid g(traj.grid().length() / lambda, traj.grid().points());
  Trajectory out(g, traj.kind(), meta);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const ComplexField r = rescale(traj.spectrum(i), lambda);
    out.push(traj.time(i) / l5, ComplexField(g, Side::spectral, r.data()));
  }
  return out;
}

}  // namespace mkdv5
