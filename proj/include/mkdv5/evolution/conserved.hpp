#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "../spectral_core/field.hpp"
#include "../spectral_core/spectral.hpp"
#include "trajectory.hpp"

namespace mkdv5 {

struct ConservedRow {
  double time = 0.0;
  double mass = 0.0;
  double energy = 0.0;
};

struct ConservedTable {
  std::vector<ConservedRow> rows;
  double max_mass_drift = 0.0;    // max |m(t) - m(0)| / m(0)
  double max_energy_drift = 0.0;  // same for the energy proxy
};

// Mass is the L2 norm squared. The energy proxy is the NLS Hamiltonian
// integral(|u_y|^2 + (sigma/2)|u|^4) for NLS trajectories and integral(u_x^2) for mKdV ones.
inline ConservedTable conserved_quantities(const Trajectory& traj) {
  if (traj.empty()) throw UsageError("conserved_quantities: empty trajectory");
  ConservedTable table;
  const auto& g = traj.grid();
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const ComplexField& s = traj.spectrum(i);
    ConservedRow row;
    row.time = traj.time(i);
    const double l2 = l2_norm(s);
    row.mass = l2 * l2;
    const double d1 = l2_norm(spectral_derivative(s, 1));
    row.energy = d1 * d1;
    if (traj.kind() == FieldKind::complex && traj.meta().nls_sign != 0.0) {
      const ComplexField p = to_physical(s);
      double quartic = 0.0;
      for (const auto& v : p.data()) quartic += std::norm(v) * std::norm(v);
      row.energy += 0.5 * traj.meta().nls_sign * quartic * g.spacing();
    }
    table.rows.push_back(row);
  }
  const auto& r0 = table.rows.front();
  for (const auto& r : table.rows) {
    if (r0.mass > 0.0) table.max_mass_drift = std::max(table.max_mass_drift, std::abs(r.mass - r0.mass) / r0.mass);
    if (std::abs(r0.energy) > 0.0)
      table.max_energy_drift = std::max(table.max_energy_drift, std::abs(r.energy - r0.energy) / std::abs(r0.energy));
  }
  return table;
}

}  // namespace mkdv5
