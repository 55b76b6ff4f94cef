#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace mkdv5 {

struct ApproxConfig {
  std::vector<double> Ns{8, 16, 32};
  double eps = 0.05;
  double envelope_width = 2.0;
  double envelope_length = 24.0;  // target Ly; adjusted so the carrier is periodic
  std::size_t envelope_points = 64;
  double T = 1.0;
  double dt = 0.01;
  std::size_t sample_every = 25;  // steps between error samples
  double sigma = 1.0;
  bool slaved_frame = true;
  double norm_s = 0.75;
  double slope_threshold = -2.0;
};

struct IllposedConfig {
  double N = 16;
  double s = -0.2;
  double eps = 8.0;
  double delta = 0.08;
  std::optional<double> lambda;
  double plateau_width = 1.3;
  double plateau_edge = 0.15;
  double envelope_length = 16.0;
  std::size_t envelope_points = 256;
  double dt = 1e-3;               // unscaled mKdV step
  double horizon_factor = 1.0;    // simulate horizon_factor * t* in unscaled time
  double max_time = 20.0;         // largest feasible unscaled simulation time
  std::size_t record_every = 20;
  double sigma = 1.0;
  double amplification_threshold = 10.0;
  double size_factor = 2.0;
  double control_tolerance = 1e-6;
};

struct CounterexampleConfig {
  std::vector<double> Ns{16, 32, 64, 128, 256, 512};
  std::vector<double> s_values{0.75, 0.5, 0.25, 0.0};
  double b = 0.51;
  std::size_t offset_points = 96;
  std::size_t frequency_points = 96;
  double dmu = 0.25;
  double slope_tolerance = 0.15;
  double flat_threshold = 0.15;
};

struct ResonanceConfig {
  std::size_t samples = 100000;
  double xi_max = 1000.0;
  double identity_tolerance = 1e-10;
  std::size_t block_count = 100;
  std::size_t block_trials = 10000;
  double block_safety = 8.0;
  std::size_t vanishing_specs = 20;
};

inline const std::vector<std::string>& suite_check_names() {
  static const std::vector<std::string> names{"linear_phase",       "nls_constant",       "nls_mass",
                                              "mkdv_mass",          "mkdv_convergence",   "resonance_identity",
                                              "resonance_relation", "block_vanishing"};
  return names;
}

struct SuiteConfig {
  std::vector<std::string> checks = suite_check_names();
  double linear_tolerance = 1e-12;
  double nls_constant_tolerance = 1e-10;
  double nls_mass_tolerance = 1e-8;
  double mkdv_mass_tolerance = 1e-6;
  double mkdv_mass_dt = 2.5e-4;
  double convergence_T = 0.2;
  double convergence_dt = 0.2 / 1024;
  double convergence_min_order = 3.5;
  double convergence_max_order = 4.6;
  std::size_t resonance_samples = 10000;
};

inline void to_json(nlohmann::ordered_json& j, const ApproxConfig& c) {
  j = {{"Ns", c.Ns},
       {"eps", c.eps},
       {"envelope_width", c.envelope_width},
       {"envelope_length", c.envelope_length},
       {"envelope_points", c.envelope_points},
       {"T", c.T},
       {"dt", c.dt},
       {"sample_every", c.sample_every},
       {"sigma", c.sigma},
       {"slaved_frame", c.slaved_frame},
       {"norm_s", c.norm_s},
       {"slope_threshold", c.slope_threshold}};
}

inline void to_json(nlohmann::ordered_json& j, const IllposedConfig& c) {
  j = {{"N", c.N},
       {"s", c.s},
       {"eps", c.eps},
       {"delta", c.delta},
       {"lambda", c.lambda ? nlohmann::ordered_json(*c.lambda) : nlohmann::ordered_json(nullptr)},
       {"plateau_width", c.plateau_width},
       {"plateau_edge", c.plateau_edge},
       {"envelope_length", c.envelope_length},
       {"envelope_points", c.envelope_points},
       {"dt", c.dt},
       {"horizon_factor", c.horizon_factor},
       {"max_time", c.max_time},
       {"record_every", c.record_every},
       {"sigma", c.sigma},
       {"amplification_threshold", c.amplification_threshold},
       {"size_factor", c.size_factor},
       {"control_tolerance", c.control_tolerance}};
}

inline void to_json(nlohmann::ordered_json& j, const CounterexampleConfig& c) {
  j = {{"Ns", c.Ns},
       {"s_values", c.s_values},
       {"b", c.b},
       {"offset_points", c.offset_points},
       {"frequency_points", c.frequency_points},
       {"dmu", c.dmu},
       {"slope_tolerance", c.slope_tolerance},
       {"flat_threshold", c.flat_threshold}};
}

inline void to_json(nlohmann::ordered_json& j, const ResonanceConfig& c) {
  j = {{"samples", c.samples},
       {"xi_max", c.xi_max},
       {"identity_tolerance", c.identity_tolerance},
       {"block_count", c.block_count},
       {"block_trials", c.block_trials},
       {"block_safety", c.block_safety},
       {"vanishing_specs", c.vanishing_specs}};
}

inline void to_json(nlohmann::ordered_json& j, const SuiteConfig& c) {
  j = {{"checks", c.checks},
       {"linear_tolerance", c.linear_tolerance},
       {"nls_constant_tolerance", c.nls_constant_tolerance},
       {"nls_mass_tolerance", c.nls_mass_tolerance},
       {"mkdv_mass_tolerance", c.mkdv_mass_tolerance},
       {"mkdv_mass_dt", c.mkdv_mass_dt},
       {"convergence_T", c.convergence_T},
       {"convergence_dt", c.convergence_dt},
       {"convergence_min_order", c.convergence_min_order},
       {"convergence_max_order", c.convergence_max_order},
       {"resonance_samples", c.resonance_samples}};
}

}  // namespace mkdv5
