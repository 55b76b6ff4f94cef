#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "../evolution/coeffs.hpp"
#include "../evolution/solvers.hpp"
#include "../evolution/trajectory.hpp"
#include "../spectral_core/field.hpp"
#include "../spectral_core/norms.hpp"
#include "../spectral_core/spectral.hpp"
#include "packet.hpp"

namespace mkdv5 {

// Packet geometry on a given x-grid, which must have period a Ly and resolve the third harmonic band.
inline PacketGeometry packet_geometry_on(double N, const SpaceGrid& envelope, const SpaceGrid& space) {
  PacketGeometry geo;
  geo.scales = PacketScales(N);
  geo.envelope = envelope;
  geo.space = space;
  if (std::abs(geo.scales.a * envelope.length() - space.length()) > 1e-12 * space.length())
    throw PreconditionError("packet grid period must equal a * Ly = " + std::to_string(geo.scales.a * envelope.length()));
  const auto mc = commensurate_mode(N, space.length());
  if (!mc) throw PreconditionError("carrier N is not commensurate with the packet grid");
  geo.carrier_mode = *mc;
  const long need = 3 * *mc + 3 * (static_cast<long>(envelope.points()) / 2);
  if (space.max_mode() < need)
    throw ResolutionError("packet grid resolves modes up to " + std::to_string(space.max_mode()) + ", needs " +
                          std::to_string(need));
  return geo;
}

// E = (d_t - d_x^5) U_ap + sigma d_x^3(U_ap^3) from the envelope state at one time. The time derivative
// is taken in carrier-factored form: d_s u is the NLS right-hand side, and each packet mode contributes
// i (N^5 + c eta + eta^2 - k^5) u_m, evaluated in extended precision.
class PacketResidual {
 public:
  PacketResidual(const PacketGeometry& geo, double sigma)
      : geo_(geo),
        sigma_(sigma),
        nls_(geo.envelope, sigma, Dealias::pad2),
        cube_(geo.space, EquationCoeffs::cubic_derivative(sigma), Dealias::pad2) {}

  const PacketGeometry& geometry() const { return geo_; }

  ComplexField operator()(const ComplexField& envelope_state, double t) {
    const ComplexField u = ensure_spectral(envelope_state);
    const auto& eg = geo_.envelope;
    const auto& sc = geo_.scales;
    std::vector<cd> rhs(u.size());
    nls_(u.data(), rhs);

    ComplexField dt_part(eg, Side::spectral);
    const long double N = sc.N, a = sc.a, c = sc.c;
    const long double N5 = N * N * N * N * N;
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (j == eg.nyquist_slot()) continue;
      const long double eta = eg.wavenumber(j);
      const long double k = N + eta / a;
      const long double symbol = N5 + c * eta + eta * eta - k * k * k * k * k;
      dt_part[j] = cd(0.0, static_cast<double>(symbol)) * u[j] + rhs[j];
    }
    ComplexField z = place_envelope(dt_part, geo_, 1, t);
    for (auto& v : z.data()) v *= sc.P;
    ComplexField e = real_part_spectrum(z);

    if (sigma_ != 0.0) {
      ComplexField up = place_envelope(u, geo_, 1, t);
      for (auto& v : up.data()) v *= sc.P;
      const ComplexField U = real_part_spectrum(up);
      const std::size_t n = geo_.space.points();
      std::vector<cd> half(U.data().begin(), U.data().begin() + static_cast<long>(n / 2 + 1));
      std::vector<cd> minus_f(half.size());
      cube_(half, minus_f);
      const ComplexField f = detail::full_from_half(geo_.space, minus_f);
      for (std::size_t j = 0; j < n; ++j) e[j] -= f[j];
    }
    return e;
  }

 private:
  PacketGeometry geo_;
  double sigma_;
  detail::NlsNonlinearity nls_;
  detail::MkdvNonlinearity cube_;
};

// Ground-truth residual sampled on a space-time window; every window time must be stored in nls.
inline SpaceTimeRealField residual_direct(const Trajectory& nls, double N, const SpaceTimeGrid& window) {
  const PacketGeometry geo = packet_geometry_on(N, nls.grid(), window.space());
  PacketResidual residual(geo, nls.meta().nls_sign);
  SpaceTimeRealField out(window, Side::physical);
  const std::size_t n = window.space().points();
  for (std::size_t it = 0; it < window.time_points(); ++it) {
    const double t = window.time(it);
    const RealField e = real_from_spectrum(residual(nls.spectrum(nls.index_of(t)), t));
    for (std::size_t ix = 0; ix < n; ++ix) out(it, ix) = e[ix];
  }
  return out;
}

namespace detail {

// Envelope on a grid four times finer, where |u|^2 u and u^3 are exact; their spectra are cut to the
// true support |m| <= 3 (n/2 - 1).
struct EnvelopeProducts {
  SpaceGrid fine;
  ComplexField u, g, h;  // u, |u|^2 u, u^3 (spectral, on fine)
};

inline EnvelopeProducts envelope_products(const ComplexField& envelope_state) {
  const ComplexField u = ensure_spectral(envelope_state);
  const auto& eg = u.grid();
  const std::size_t nf = 4 * eg.points();
  EnvelopeProducts p;
  p.fine = SpaceGrid(eg.length(), nf);
  std::vector<cd> c = u.data();
  c[eg.nyquist_slot()] = 0.0;
  p.u = ComplexField(p.fine, Side::spectral, pad_spectrum(c, nf));
  const ComplexField phys = to_physical(p.u);
  ComplexField g(p.fine, Side::physical), h(p.fine, Side::physical);
  for (std::size_t j = 0; j < nf; ++j) {
    g[j] = std::norm(phys[j]) * phys[j];
    h[j] = phys[j] * phys[j] * phys[j];
  }
  p.g = to_spectral(g);
  p.h = to_spectral(h);
  const long top = 3 * eg.max_mode();
  for (std::size_t j = 0; j < nf; ++j)
    if (std::labs(p.fine.mode(j)) > top) p.g[j] = p.h[j] = 0.0;
  return p;
}

}  // namespace detail

inline constexpr std::array<double, 7> listed_error_exponents{-4.0, -5.5, -9.0, -4.0, -5.5, -9.0, -1.5};
inline constexpr std::array<int, 7> listed_error_harmonics{1, 1, 1, 3, 3, 1, 3};
inline constexpr std::array<int, 7> listed_error_derivatives{1, 2, 3, 1, 2, 3, 0};
// Exponents and carriers that the product rule actually produces for the same seven sources.
inline constexpr std::array<double, 7> expanded_error_exponents{-4.0, -6.5, -9.0, -4.0, -6.5, -9.0, -1.5};
inline constexpr std::array<int, 7> expanded_error_harmonics{1, 1, 1, 3, 3, 3, 3};

// The seven listed error fields E_1..E_7 at time t, spectral on the packet grid, with the printed powers
// of N and carriers and unit coefficients.
inline std::vector<ComplexField> error_terms(const ComplexField& envelope_state, const PacketGeometry& geo, double t) {
  const auto p = detail::envelope_products(envelope_state);
  PacketGeometry fine = geo;
  fine.envelope = p.fine;
  std::vector<ComplexField> out;
  for (std::size_t j = 0; j < 7; ++j) {
    const ComplexField& src = j < 3 ? p.g : p.h;
    ComplexField f = place_envelope(spectral_derivative(src, listed_error_derivatives[j]), fine,
                                    listed_error_harmonics[j], t);
    const double w = std::pow(geo.scales.N, listed_error_exponents[j]);
    for (auto& v : f.data()) v *= w;
    out.push_back(std::move(f));
  }
  return out;
}

inline std::vector<ComplexField> error_terms(const Trajectory& nls, double N, double t) {
  const PacketGeometry geo = packet_geometry(N, nls.grid());
  return error_terms(nls.spectrum(nls.index_of(t)), geo, t);
}

// Exact expansion of the residual: seven nonlinear pieces aligned with E_1..E_7 (with the coefficients the
// product rule gives) followed by the three dispersive corrections in u_yyy, u_yyyy, u_yyyyy. The residual
// equals the real part of their sum.
inline std::vector<ComplexField> expanded_error_terms(const ComplexField& envelope_state, const PacketGeometry& geo,
                                                      double t, double sigma) {
  const auto p = detail::envelope_products(envelope_state);
  PacketGeometry fine = geo;
  fine.envelope = p.fine;
  const auto& sc = geo.scales;
  const double N = sc.N, a = sc.a, P = sc.P;
  const double B = sigma * 0.75 * P * P * P;
  const cd I(0.0, 1.0);
  struct Piece {
    const ComplexField* src;
    int order;
    int harmonic;
    cd coef;
  };
  const Piece pieces[10] = {
      {&p.g, 1, 1, B * 3.0 * (I * N) * (I * N) / a},
      {&p.g, 2, 1, B * 3.0 * I * N / (a * a)},
      {&p.g, 3, 1, B / (a * a * a)},
      {&p.h, 1, 3, B * (3.0 * I * N) * (3.0 * I * N) / a},
      {&p.h, 2, 3, B * 3.0 * I * N / (a * a)},
      {&p.h, 3, 3, B / (3.0 * a * a * a)},
      {&p.h, 0, 3, B * std::pow(3.0 * I * N, 3) / 3.0},
      {&p.u, 3, 1, P * 10.0 * N * N / (a * a * a)},
      {&p.u, 4, 1, -I * P * 5.0 * N / std::pow(a, 4)},
      {&p.u, 5, 1, -P / std::pow(a, 5)},
  };
  std::vector<ComplexField> out;
  for (const auto& pc : pieces) {
    ComplexField f = place_envelope(spectral_derivative(*pc.src, pc.order), fine, pc.harmonic, t);
    for (auto& v : f.data()) v *= pc.coef;
    out.push_back(std::move(f));
  }
  return out;
}

struct ErrorTermNorms {
  std::vector<double> listed;    // L2 of E_1..E_7
  std::vector<double> expanded;  // L2 of the ten expanded pieces
  double direct = 0.0;           // L2 of the residual
  double expanded_sum = 0.0;     // L2 of Re(sum of expanded pieces)
  double mismatch = 0.0;         // L2 of the difference, relative to direct
};

inline ErrorTermNorms error_term_norms(const ComplexField& envelope_state, const PacketGeometry& geo, double t,
                                       double sigma) {
  ErrorTermNorms r;
  for (const auto& f : error_terms(envelope_state, geo, t)) r.listed.push_back(l2_norm(f));
  ComplexField sum(geo.space, Side::spectral);
  for (const auto& f : expanded_error_terms(envelope_state, geo, t, sigma)) {
    r.expanded.push_back(l2_norm(f));
    sum = sum + f;
  }
  const ComplexField exact = real_part_spectrum(sum);
  PacketResidual residual(geo, sigma);
  const ComplexField direct = residual(envelope_state, t);
  r.direct = l2_norm(direct);
  r.expanded_sum = l2_norm(exact);
  r.mismatch = r.direct > 0.0 ? l2_norm(direct - exact) / r.direct : l2_norm(exact);
  return r;
}

}  // namespace mkdv5
