#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "../evolution/stepper.hpp"
#include "../evolution/trajectory.hpp"
#include "../spectral_core/field.hpp"
#include "../spectral_core/grid.hpp"
#include "../spectral_core/spectral.hpp"
#include "params.hpp"

namespace mkdv5 {

// The envelope lives on [0, Ly) in y; the packet on [0, Lx) in x with Lx = a Ly, so the envelope's
// mode m sits on x-mode (carrier_mode + m) and e^{iNx} is exactly periodic.
struct PacketGeometry {
  PacketScales scales{1.0};
  long carrier_mode = 0;
  SpaceGrid envelope;
  SpaceGrid space;
};

inline std::optional<long> commensurate_mode(double N, double x_length) {
  const double m = N * x_length / (2.0 * std::numbers::pi);
  const double r = std::round(m);
  if (r < 1.0 || std::abs(m - r) > 1e-6) return std::nullopt;
  return static_cast<long>(r);
}

// Smallest fast x-grid on which the third harmonic of the packet, with its envelope band, is resolved.
inline std::size_t packet_points(long carrier_mode, std::size_t envelope_points, std::size_t margin = 8) {
  const std::size_t top = 3 * static_cast<std::size_t>(carrier_mode) + 3 * (envelope_points / 2) + margin;
  return fast_even_size(2 * (top + 1));
}

inline PacketGeometry packet_geometry(double N, const SpaceGrid& envelope, std::size_t margin = 8) {
  PacketGeometry g;
  g.scales = PacketScales(N);
  g.envelope = envelope;
  const double lx = g.scales.a * envelope.length();
  const auto mc = commensurate_mode(N, lx);
  if (!mc)
    throw PreconditionError("carrier N = " + std::to_string(N) + " is not commensurate with the envelope period " +
                            std::to_string(envelope.length()));
  g.carrier_mode = *mc;
  g.space = SpaceGrid(lx, packet_points(*mc, envelope.points(), margin));
  return g;
}

// Geometry whose envelope period is as close to target_length as commensurability allows.
inline PacketGeometry packet_geometry(double N, double target_length, std::size_t envelope_points,
                                      std::size_t margin = 8) {
  const PacketScales sc(N);
  const long mc = std::max(1L, std::lround(N * sc.a * target_length / (2.0 * std::numbers::pi)));
  const double lx = 2.0 * std::numbers::pi * static_cast<double>(mc) / N;
  return packet_geometry(N, SpaceGrid(lx / sc.a, envelope_points), margin);
}

// Spectrum of Re z given the spectrum of z.
inline ComplexField real_part_spectrum(const ComplexField& z) {
  if (z.side() != Side::spectral) throw UsageError("real_part_spectrum: expects a spectral field");
  const auto& g = z.grid();
  ComplexField out(g, Side::spectral);
  const long n = static_cast<long>(g.points());
  for (long j = 0; j < n; ++j) {
    const long m = g.mode(static_cast<std::size_t>(j));
    const cd mirror = m == -n / 2 ? z[static_cast<std::size_t>(j)] : z[g.slot(-m)];
    out[static_cast<std::size_t>(j)] = 0.5 * (z[static_cast<std::size_t>(j)] + std::conj(mirror));
  }
  return out;
}

// Spectrum on the packet grid of e^{i j (N x + N^5 t)} f(x/a + c t) for an envelope spectrum f.
inline ComplexField place_envelope(const ComplexField& f, const PacketGeometry& geo, int harmonic, double t) {
  const ComplexField fs = ensure_spectral(f);
  if (!(fs.grid() == geo.envelope)) throw UsageError("place_envelope: envelope grid does not match the geometry");
  const auto& eg = geo.envelope;
  const auto& xg = geo.space;
  ComplexField out(xg, Side::spectral);
  const long shift = harmonic * geo.carrier_mode;
  const long double N = geo.scales.N;
  const long double carrier_phase = static_cast<long double>(harmonic) * N * N * N * N * N * t;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    if (j == eg.nyquist_slot() || fs[j] == cd(0.0, 0.0)) continue;
    const long mode = shift + eg.mode(j);
    if (std::labs(mode) > xg.max_mode())
      throw ResolutionError("packet grid does not resolve harmonic " + std::to_string(harmonic) + " (mode " +
                            std::to_string(mode) + ")");
    const long double angle =
        static_cast<long double>(eg.wavenumber(j)) * static_cast<long double>(geo.scales.c) * t + carrier_phase;
    out[xg.slot(mode)] += fs[j] * unit_phase(angle);
  }
  return out;
}

// Fraction of envelope mass lying outside the y-interval [y0, y0 + width) (periodically); when the
// interval covers the whole period the edge strips of width L/16 next to the seam count as outside.
inline double envelope_outside_fraction(const ComplexField& u, double y0, double width) {
  const ComplexField p = ensure_physical(u);
  const auto& g = p.grid();
  const double L = g.length();
  double total = 0.0, outside = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double m = std::norm(p[j]);
    total += m;
    const double y = g.x(j);
    bool out;
    if (width >= L) {
      out = y < L / 16.0 || y >= L - L / 16.0;
    } else {
      double r = std::fmod(y - y0, L);
      if (r < 0.0) r += L;
      out = r >= width;
    }
    if (out) outside += m;
  }
  return total > 0.0 ? outside / total : 0.0;
}

inline void check_envelope_window(const ComplexField& u, double y0, double width, double tolerance) {
  const double f = envelope_outside_fraction(u, y0, width);
  if (f > tolerance)
    throw ResolutionError("envelope mass outside the window is " + std::to_string(f) + " (tolerance " +
                          std::to_string(tolerance) + ")");
}

struct PacketOptions {
  double window_tolerance = 1e-8;
};

// U_ap(t, .) = P Re e^{iNx} e^{iN^5 t} u(t, x/a + c t) for the envelope state u = u(t, .).
inline RealField build_U_ap(const ComplexField& envelope_state, double N, double t, const SpaceGrid& target,
                            const PacketOptions& opt = {}) {
  const PacketScales sc(N);
  if (3.0 * N > target.k_max())
    throw PreconditionError("carrier unresolved: 3N = " + std::to_string(3.0 * N) + " exceeds k_max = " +
                            std::to_string(target.k_max()));
  const ComplexField u = ensure_spectral(envelope_state);
  const auto& eg = u.grid();
  const double covered = target.length() / sc.a;
  check_envelope_window(u, sc.c * t, covered, opt.window_tolerance);

  const auto mc = commensurate_mode(N, target.length());
  if (mc && std::abs(sc.a * eg.length() - target.length()) <= 1e-12 * target.length()) {
    PacketGeometry geo;
    geo.scales = sc;
    geo.carrier_mode = *mc;
    geo.envelope = eg;
    geo.space = target;
    ComplexField z = place_envelope(u, geo, 1, t);
    for (auto& v : z.data()) v *= sc.P;
    return real_from_spectrum(real_part_spectrum(z));
  }

  RealField out(target, Side::physical);
  const long double carrier_phase = static_cast<long double>(N) * N * N * N * N * t;
  for (std::size_t j = 0; j < target.points(); ++j) {
    const double x = target.x(j);
    const cd env = interpolate(u, x / sc.a + sc.c * t);
    out[j] = sc.P * (unit_phase(static_cast<long double>(N) * x + carrier_phase) * env).real();
  }
  return out;
}

inline RealField build_U_ap(const Trajectory& nls, double N, double t, const SpaceGrid& target,
                            const PacketOptions& opt = {}) {
  return build_U_ap(nls.spectrum(nls.index_of(t)), N, t, target, opt);
}

inline ComplexField gaussian_envelope(const SpaceGrid& g, double amplitude, double width) {
  const double c = g.length() / 2.0;
  return sample(g, [&](double y) {
    const double z = (y - c) / width;
    return cd(amplitude * std::exp(-z * z), 0.0);
  });
}

// Smooth plateau of height amplitude and width R with tanh edges of width w, centred in the period.
inline ComplexField plateau_envelope(const SpaceGrid& g, double amplitude, double R, double w) {
  const double c = g.length() / 2.0;
  return sample(g, [&](double y) {
    const double z = y - c;
    return cd(amplitude * 0.5 * (std::tanh((z + R / 2) / w) - std::tanh((z - R / 2) / w)), 0.0);
  });
}

}  // namespace mkdv5
