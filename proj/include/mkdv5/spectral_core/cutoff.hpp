#pragma once

#include <cmath>
#include <vector>

#include "../errors.hpp"

namespace mkdv5 {

// Smooth plateau: 1 on [plateau_lo, plateau_hi], 0 outside (support_lo, support_hi).
// smoothness < 0 selects the C-infinity transition built from e^{-1/x}; smoothness k >= 0 uses the
// regularized incomplete beta I_x(k+1, k+1), which is C^k.
class TimeCutoff {
 public:
  static constexpr int infinite = -1;

  TimeCutoff() : TimeCutoff(0.0, 1.0, -1.0, 2.0, infinite) {}
  TimeCutoff(double plateau_lo, double plateau_hi, double support_lo, double support_hi, int smoothness = infinite)
      : plo_(plateau_lo), phi_(plateau_hi), slo_(support_lo), shi_(support_hi), k_(smoothness) {
    if (!(slo_ < plo_ && plo_ <= phi_ && phi_ < shi_))
      throw UsageError("TimeCutoff: need support_lo < plateau_lo <= plateau_hi < support_hi");
  }

  double plateau_lo() const { return plo_; }
  double plateau_hi() const { return phi_; }
  double support_lo() const { return slo_; }
  double support_hi() const { return shi_; }
  int smoothness() const { return k_; }

  double operator()(double t) const {
    if (t <= slo_ || t >= shi_) return 0.0;
    if (t >= plo_ && t <= phi_) return 1.0;
    if (t < plo_) return step((t - slo_) / (plo_ - slo_));
    return step((shi_ - t) / (shi_ - phi_));
  }

 private:
  double step(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    if (k_ < 0) {
      const double a = std::exp(-1.0 / x);
      const double b = std::exp(-1.0 / (1.0 - x));
      return a / (a + b);
    }
    // I_x(k+1, k+1) = sum_{j=k+1}^{2k+1} C(2k+1, j) x^j (1-x)^{2k+1-j}
    const int m = 2 * k_ + 1;
    double acc = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= m; ++j) {
      if (j > 0) binom = binom * static_cast<double>(m - j + 1) / static_cast<double>(j);
      if (j >= k_ + 1) acc += binom * std::pow(x, j) * std::pow(1.0 - x, m - j);
    }
    return std::min(1.0, std::max(0.0, acc));
  }

  double plo_, phi_, slo_, shi_;
  int k_;
};

}  // namespace mkdv5
