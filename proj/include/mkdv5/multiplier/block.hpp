#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "../errors.hpp"
#include "resonance.hpp"

namespace mkdv5 {

inline constexpr double dyadic_tolerance = 4.0;
inline constexpr double resonance_tolerance = 16.0;
inline constexpr double block_safety_factor = 8.0;

inline bool comparable(double x, double y, double factor = dyadic_tolerance) {
  return x <= factor * y && y <= factor * x;
}
inline bool much_greater(double x, double y) { return x > dyadic_tolerance * y; }
inline bool is_dyadic(double x) {
  if (!(x > 0.0)) return false;
  int e = 0;
  return std::frexp(x, &e) == 0.5;
}

struct DyadicBlockSpec {
  std::array<double, 3> N{1.0, 1.0, 1.0};
  double H = 1.0;
  std::array<double, 3> L{1.0, 1.0, 1.0};

  std::array<double, 3> sorted_N() const {
    auto v = N;
    std::sort(v.begin(), v.end());
    return v;
  }
  std::array<double, 3> sorted_L() const {
    auto v = L;
    std::sort(v.begin(), v.end());
    return v;
  }
  double N_min() const { return sorted_N()[0]; }
  double N_med() const { return sorted_N()[1]; }
  double N_max() const { return sorted_N()[2]; }
  double L_min() const { return sorted_L()[0]; }
  double L_med() const { return sorted_L()[1]; }
  double L_max() const { return sorted_L()[2]; }

  // First violated relation, if any.
  std::optional<std::string> violation() const {
    for (double n : N)
      if (!is_dyadic(n)) return "N_j must be dyadic";
    for (double l : L)
      if (!is_dyadic(l) || l < 1.0) return "L_j must be dyadic and >= 1";
    if (!is_dyadic(H)) return "H must be dyadic";
    if (!comparable(N_med(), N_max())) return "N_med ~ N_max";
    if (!comparable(L_max(), std::max(H, L_med()))) return "L_max ~ max(H, L_med)";
    if (N_med() >= 1.0) {
      const double r = std::pow(N_max(), 4) * N_min();
      if (!comparable(H, r, resonance_tolerance)) return "H ~ N_max^4 N_min";
    }
    return std::nullopt;
  }
  bool admissible() const { return !violation(); }
};

enum class BlockCase { coherent_pp, coherent_pm, generic };

inline const char* to_string(BlockCase c) {
  switch (c) {
    case BlockCase::coherent_pp: return "a";
    case BlockCase::coherent_pm: return "b";
    default: return "c";
  }
}

struct BlockBound {
  double value = 0.0;
  BlockCase which = BlockCase::generic;
};

inline BlockCase block_case(const DyadicBlockSpec& s) {
  if (comparable(s.N_max(), s.N_min()) && comparable(s.L_max(), s.H)) return BlockCase::coherent_pp;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    if (comparable(s.N[j], s.N[k]) && much_greater(s.N[j], s.N[i]) && comparable(s.H, s.L[i]) &&
        s.L[i] * dyadic_tolerance >= s.L[j] && s.L[i] * dyadic_tolerance >= s.L[k])
      return BlockCase::coherent_pm;
  }
  return BlockCase::generic;
}

inline BlockBound block_bound(const DyadicBlockSpec& s) {
  if (auto v = s.violation()) throw PreconditionError("block spec is not admissible: " + *v);
  BlockBound b;
  b.which = block_case(s);
  const double base = std::sqrt(s.L_min()) / (s.N_max() * s.N_max());
  switch (b.which) {
    case BlockCase::coherent_pp: b.value = base * std::sqrt(s.L_med()); break;
    case BlockCase::coherent_pm: b.value = base * std::sqrt(std::min(s.H, s.N_max() / s.N_min() * s.L_med())); break;
    default: b.value = base * std::sqrt(std::min(s.H, s.L_med())); break;
  }
  return b;
}

struct BlockEstimateOptions {
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  double stall_improvement = 0.005;
  std::size_t stall_rounds = 10;
  std::size_t restarts = 3;
  std::size_t max_triples = 12'000'000;
  // Cells per dyadic shell in xi (relative to N_min) and in lambda (relative to each L_j, at least 1/4).
  double xi_cells = 32.0;
  double lambda_cells = 64.0;
};

struct BlockEstimate {
  double value = 0.0;
  std::size_t rounds = 0;
  std::size_t restarts = 0;
  std::size_t triples = 0;
  std::vector<double> history;  // running maximum after each round
};

namespace detail {

inline bool in_shell(double v, double scale, bool lowest) {
  const double a = std::abs(v);
  return lowest ? a < 2.0 * scale : (a >= scale && a < 2.0 * scale);
}

// Symmetric cell centres of a lattice with spacing d over {scale <= |x| < 2 scale} (or |x| < 2 for the
// lowest modulation shell).
inline std::vector<double> shell_centres(double scale, double d, bool lowest) {
  std::vector<double> pos;
  const double lo = lowest ? 0.0 : scale;
  for (std::size_t k = 0;; ++k) {
    const double c = lo + (static_cast<double>(k) + 0.5) * d;
    if (c >= 2.0 * scale) break;
    pos.push_back(c);
  }
  std::vector<double> out;
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) out.push_back(-*it);
  out.insert(out.end(), pos.begin(), pos.end());
  return out;
}

}  // namespace detail

// Lower estimate of the [3, R x R] multiplier norm of the block: the trilinear form
// sum g1 g2 g3 over the hyperplane xi1+xi2+xi3 = 0, lambda1+lambda2+lambda3 = -h, with the gj piecewise
// constant on (xi, lambda) cells and unit L2 norm, maximised by alternating power iteration from a flat
// start and then seeded random restarts. Factor 3 (the largest L) is the dependent one.
inline BlockEstimate estimate_block_norm(const DyadicBlockSpec& spec, const BlockEstimateOptions& opt = {}) {
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return spec.L[a] < spec.L[b]; });
  const std::array<double, 3> N{spec.N[order[0]], spec.N[order[1]], spec.N[order[2]]};
  const std::array<double, 3> L{spec.L[order[0]], spec.L[order[1]], spec.L[order[2]]};
  const double H = spec.H;

  const double dxi = spec.N_min() / opt.xi_cells;
  std::array<double, 3> dl{};
  for (int j = 0; j < 3; ++j) dl[j] = std::max(0.25, L[j] / opt.lambda_cells);
  const auto x1 = detail::shell_centres(N[0], dxi, false);
  const auto x2 = detail::shell_centres(N[1], dxi, false);
  const auto l1 = detail::shell_centres(L[0], dl[0], L[0] == 1.0);
  const auto l2 = detail::shell_centres(L[1], dl[1], L[1] == 1.0);

  struct Pair {
    std::uint32_t i1, i2;
    long xi3;
    double h;
  };
  std::vector<Pair> pairs;
  for (std::uint32_t i = 0; i < x1.size(); ++i)
    for (std::uint32_t k = 0; k < x2.size(); ++k) {
      const double xi3 = -(x1[i] + x2[k]);
      const double h = resonance_h(x1[i], x2[k]);
      if (detail::in_shell(xi3, N[2], false) && detail::in_shell(h, H, false))
        pairs.push_back({i, k, std::lround(xi3 / dxi), h});
    }

  BlockEstimate est;
  auto lam3_ok = [&](double v) { return detail::in_shell(v, L[2], L[2] == 1.0); };
  std::size_t count = 0;
  for (const auto& p : pairs)
    for (double a : l1)
      for (double b : l2)
        if (lam3_ok(-p.h - a - b)) ++count;
  if (count > opt.max_triples)
    throw CapacityError("block lattice needs " + std::to_string(count) + " interaction triples (budget " +
                        std::to_string(opt.max_triples) + ")");
  est.triples = count;
  if (count == 0 || opt.trials == 0) return est;

  std::vector<std::uint32_t> c1, c2;
  std::vector<std::pair<long, long>> key;
  c1.reserve(count);
  c2.reserve(count);
  key.reserve(count);
  for (const auto& p : pairs)
    for (std::uint32_t a = 0; a < l1.size(); ++a)
      for (std::uint32_t b = 0; b < l2.size(); ++b) {
        const double lam3 = -p.h - l1[a] - l2[b];
        if (!lam3_ok(lam3)) continue;
        c1.push_back(p.i1 * static_cast<std::uint32_t>(l1.size()) + a);
        c2.push_back(p.i2 * static_cast<std::uint32_t>(l2.size()) + b);
        key.emplace_back(p.xi3, static_cast<long>(std::floor(lam3 / dl[2])));
      }
  std::vector<std::pair<long, long>> uniq = key;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<std::uint32_t> c3(count);
  for (std::size_t t = 0; t < count; ++t)
    c3[t] = static_cast<std::uint32_t>(std::lower_bound(uniq.begin(), uniq.end(), key[t]) - uniq.begin());
  key.clear();
  key.shrink_to_fit();

  const std::size_t n1 = x1.size() * l1.size(), n2 = x2.size() * l2.size(), n3 = uniq.size();
  const std::array<double, 3> cell{dxi * dl[0], dxi * dl[1], dxi * dl[2]};
  const double w = cell[0] * cell[1];
  std::vector<double> g1(n1), g2(n2), g3(n3);
  auto normalise = [](std::vector<double>& g, double c) {
    double s = 0.0;
    for (double v : g) s += v * v;
    const double nrm = std::sqrt(s * c);
    if (nrm > 0.0)
      for (double& v : g) v /= nrm;
  };

  std::mt19937_64 rng(opt.seed);
  const std::size_t cap = std::min<std::size_t>(opt.trials, 10000);
  double best = 0.0;
  for (std::size_t start = 0; start <= opt.restarts && est.rounds < cap; ++start) {
    for (auto* g : {&g1, &g2})
      for (double& v : *g) v = start == 0 ? 1.0 : uniform01(rng);
    if (start > 0) ++est.restarts;
    double mark = best;
    for (std::size_t r = 1; est.rounds < cap; ++r) {
      std::fill(g3.begin(), g3.end(), 0.0);
      for (std::size_t t = 0; t < count; ++t) g3[c3[t]] += g1[c1[t]] * g2[c2[t]] * w;
      normalise(g3, cell[2]);
      std::fill(g1.begin(), g1.end(), 0.0);
      for (std::size_t t = 0; t < count; ++t) g1[c1[t]] += g2[c2[t]] * g3[c3[t]] * w;
      normalise(g1, cell[0]);
      std::fill(g2.begin(), g2.end(), 0.0);
      for (std::size_t t = 0; t < count; ++t) g2[c2[t]] += g1[c1[t]] * g3[c3[t]] * w;
      normalise(g2, cell[1]);
      double val = 0.0;
      for (std::size_t t = 0; t < count; ++t) val += g1[c1[t]] * g2[c2[t]] * g3[c3[t]];
      best = std::max(best, val * w);
      est.history.push_back(best);
      ++est.rounds;
      if (r % opt.stall_rounds == 0) {
        if (best <= mark * (1.0 + opt.stall_improvement)) break;
        mark = best;
      }
    }
  }
  est.value = best;
  return est;
}

// Number of lattice interaction triples of the block (0 when its support misses the lattice).
inline std::size_t block_support_size(const DyadicBlockSpec& spec, const BlockEstimateOptions& opt = {}) {
  BlockEstimateOptions o = opt;
  o.trials = 0;
  o.max_triples = static_cast<std::size_t>(-1);
  return estimate_block_norm(spec, o).triples;
}

// Fixed regression set: admissible specs with N_j in {1/2, 1, 2, 4}, L_med <= 64, L_max <= 4096 and a
// support that meets the estimator lattice, drawn without replacement by a seeded generator.
inline std::vector<DyadicBlockSpec> block_regression_set(std::size_t count = 100, std::uint64_t seed = 1,
                                                         const BlockEstimateOptions& opt = {}) {
  const double ns[] = {0.5, 1.0, 2.0, 4.0};
  const double ls[] = {1, 2, 4, 8, 16, 64, 256, 1024, 4096};
  std::vector<DyadicBlockSpec> all;
  for (double a : ns)
    for (double b : ns)
      for (double c : ns)
        for (double p : ls)
          for (double q : ls)
            for (double r : ls)
              for (int e = -6; e <= 15; ++e) {
                DyadicBlockSpec s{{a, b, c}, std::ldexp(1.0, e), {p, q, r}};
                if (s.L_med() <= 64.0 && s.admissible()) all.push_back(s);
              }
  std::mt19937_64 rng(seed);
  std::vector<DyadicBlockSpec> out;
  for (std::size_t i = 0; out.size() < count && i < all.size(); ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (all.size() - i));
    std::swap(all[i], all[j]);
    const std::size_t n = block_support_size(all[i], opt);
    if (n > 0 && n <= opt.max_triples) out.push_back(all[i]);
  }
  return out;
}

}  // namespace mkdv5
