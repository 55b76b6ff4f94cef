#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "../spectral_core/field.hpp"
#include "../spectral_core/spectral.hpp"
#include "coeffs.hpp"

namespace mkdv5 {

enum class FieldKind { real, complex };

struct SolverMeta {
  std::string equation;  // "fifth_mkdv", "cubic_nls" or "linear_fifth"
  double dt = 0.0;
  std::size_t steps = 0;
  Dealias dealias = Dealias::pad2;
  std::string frame = "integrating_factor";
  EquationCoeffs coeffs;
  double nls_sign = 1.0;
};

// States are stored on the spectral side; mKdV states are exactly Hermitian by construction.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(const SpaceGrid& grid, FieldKind kind, SolverMeta meta) : grid_(grid), kind_(kind), meta_(std::move(meta)) {}

  const SpaceGrid& grid() const { return grid_; }
  FieldKind kind() const { return kind_; }
  const SolverMeta& meta() const { return meta_; }
  SolverMeta& meta() { return meta_; }
  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  const std::vector<double>& times() const { return times_; }
  double time(std::size_t i) const { return times_[i]; }
  const ComplexField& spectrum(std::size_t i) const { return states_[i]; }
  const ComplexField& back() const { return states_.back(); }

  void push(double t, ComplexField spectrum) {
    if (spectrum.side() != Side::spectral || !(spectrum.grid() == grid_))
      throw UsageError("Trajectory: state must be spectral on the trajectory grid");
    if (!times_.empty() && !(t > times_.back())) throw UsageError("Trajectory: time stamps must increase");
    if (kind_ == FieldKind::real) {
      double scale = 0.0;
      for (const auto& v : spectrum.data()) scale = std::max(scale, std::abs(v));
      if (conjugate_symmetry_defect(spectrum) > 1e-12 * std::max(1.0, scale))
        throw UsageError("Trajectory: real state violates conjugate symmetry");
    }
    times_.push_back(t);
    states_.push_back(std::move(spectrum));
  }

  // Index of the stored state at time t (absolute tolerance tol); throws if absent.
  std::size_t index_of(double t, double tol = 1e-9) const {
    for (std::size_t i = 0; i < times_.size(); ++i)
      if (std::abs(times_[i] - t) <= tol) return i;
    throw PreconditionError("Trajectory: no stored state at t = " + std::to_string(t));
  }

  RealField real_state(std::size_t i) const { return real_from_spectrum(states_[i]); }
  ComplexField physical_state(std::size_t i) const { return to_physical(states_[i]); }

 private:
  SpaceGrid grid_;
  FieldKind kind_ = FieldKind::real;
  SolverMeta meta_;
  std::vector<double> times_;
  std::vector<ComplexField> states_;
};

}  // namespace mkdv5
