#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include "../errors.hpp"
#include "../experiments/approximation.hpp"
#include "../experiments/config.hpp"
#include "../experiments/counterexample.hpp"
#include "../experiments/illposedness.hpp"
#include "../experiments/resonance_scan.hpp"
#include "../experiments/suite.hpp"
#include "../wavepacket/params.hpp"

namespace mkdv5 {

inline constexpr const char* output_dir_env = "MKDV5_OUTPUT_DIR";

struct RunConfig {
  std::string output_dir = "results";
  std::uint64_t seed = 1;
  ApproxConfig approx;
  IllposedConfig illposed;
  CounterexampleConfig counterexample;
  ResonanceConfig resonance;
  SuiteConfig suite;
};

inline void to_json(nlohmann::ordered_json& j, const RunConfig& c) {
  j = {{"output_dir", c.output_dir}, {"seed", c.seed},         {"approx", c.approx},  {"illposed", c.illposed},
       {"counterexample", c.counterexample}, {"resonance", c.resonance}, {"suite", c.suite}};
}

inline void from_json(const nlohmann::ordered_json& j, ApproxConfig& c) {
  j.at("Ns").get_to(c.Ns);
  j.at("eps").get_to(c.eps);
  j.at("envelope_width").get_to(c.envelope_width);
  j.at("envelope_length").get_to(c.envelope_length);
  j.at("envelope_points").get_to(c.envelope_points);
  j.at("T").get_to(c.T);
  j.at("dt").get_to(c.dt);
  j.at("sample_every").get_to(c.sample_every);
  j.at("sigma").get_to(c.sigma);
  j.at("slaved_frame").get_to(c.slaved_frame);
  j.at("norm_s").get_to(c.norm_s);
  j.at("slope_threshold").get_to(c.slope_threshold);
}

inline void from_json(const nlohmann::ordered_json& j, IllposedConfig& c) {
  j.at("N").get_to(c.N);
  j.at("s").get_to(c.s);
  j.at("eps").get_to(c.eps);
  j.at("delta").get_to(c.delta);
  if (j.at("lambda").is_null())
    c.lambda.reset();
  else
    c.lambda = j.at("lambda").get<double>();
  j.at("plateau_width").get_to(c.plateau_width);
  j.at("plateau_edge").get_to(c.plateau_edge);
  j.at("envelope_length").get_to(c.envelope_length);
  j.at("envelope_points").get_to(c.envelope_points);
  j.at("dt").get_to(c.dt);
  j.at("horizon_factor").get_to(c.horizon_factor);
  j.at("max_time").get_to(c.max_time);
  j.at("record_every").get_to(c.record_every);
  j.at("sigma").get_to(c.sigma);
  j.at("amplification_threshold").get_to(c.amplification_threshold);
  j.at("size_factor").get_to(c.size_factor);
  j.at("control_tolerance").get_to(c.control_tolerance);
}

inline void from_json(const nlohmann::ordered_json& j, CounterexampleConfig& c) {
  j.at("Ns").get_to(c.Ns);
  j.at("s_values").get_to(c.s_values);
  j.at("b").get_to(c.b);
  j.at("offset_points").get_to(c.offset_points);
  j.at("frequency_points").get_to(c.frequency_points);
  j.at("dmu").get_to(c.dmu);
  j.at("slope_tolerance").get_to(c.slope_tolerance);
  j.at("flat_threshold").get_to(c.flat_threshold);
}

inline void from_json(const nlohmann::ordered_json& j, ResonanceConfig& c) {
  j.at("samples").get_to(c.samples);
  j.at("xi_max").get_to(c.xi_max);
  j.at("identity_tolerance").get_to(c.identity_tolerance);
  j.at("block_count").get_to(c.block_count);
  j.at("block_trials").get_to(c.block_trials);
  j.at("block_safety").get_to(c.block_safety);
  j.at("vanishing_specs").get_to(c.vanishing_specs);
}

inline void from_json(const nlohmann::ordered_json& j, SuiteConfig& c) {
  j.at("checks").get_to(c.checks);
  j.at("linear_tolerance").get_to(c.linear_tolerance);
  j.at("nls_constant_tolerance").get_to(c.nls_constant_tolerance);
  j.at("nls_mass_tolerance").get_to(c.nls_mass_tolerance);
  j.at("mkdv_mass_tolerance").get_to(c.mkdv_mass_tolerance);
  j.at("mkdv_mass_dt").get_to(c.mkdv_mass_dt);
  j.at("convergence_T").get_to(c.convergence_T);
  j.at("convergence_dt").get_to(c.convergence_dt);
  j.at("convergence_min_order").get_to(c.convergence_min_order);
  j.at("convergence_max_order").get_to(c.convergence_max_order);
  j.at("resonance_samples").get_to(c.resonance_samples);
}

inline void from_json(const nlohmann::ordered_json& j, RunConfig& c) {
  j.at("output_dir").get_to(c.output_dir);
  j.at("seed").get_to(c.seed);
  j.at("approx").get_to(c.approx);
  j.at("illposed").get_to(c.illposed);
  j.at("counterexample").get_to(c.counterexample);
  j.at("resonance").get_to(c.resonance);
  j.at("suite").get_to(c.suite);
}

namespace detail {

inline std::string join_key(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

inline double yaml_number(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) throw ConfigError(path, "expected a number");
  try {
    const double v = n.as<double>();
    if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
    return v;
  } catch (const YAML::Exception&) {
    throw ConfigError(path, "expected a number, got '" + n.Scalar() + "'");
  }
}

inline std::uint64_t yaml_count(const YAML::Node& n, const std::string& path) {
  const double v = yaml_number(n, path);
  if (v < 0.0 || v != std::floor(v) || v > 9.007199254740992e15)
    throw ConfigError(path, "expected a non-negative integer, got '" + n.Scalar() + "'");
  return static_cast<std::uint64_t>(v);
}

// Writes the YAML value into target, whose current contents fix the expected type.
inline void merge_value(nlohmann::ordered_json& target, const YAML::Node& node, const std::string& path) {
  if (target.is_object()) {
    if (node.IsNull()) return;
    if (!node.IsMap()) throw ConfigError(path, "expected a mapping");
    for (const auto& kv : node) {
      const std::string key = kv.first.as<std::string>();
      const std::string sub = join_key(path, key);
      if (!target.contains(key)) throw ConfigError(sub, "unknown key");
      merge_value(target[key], kv.second, sub);
    }
  } else if (target.is_array()) {
    if (!node.IsSequence()) throw ConfigError(path, "expected a sequence");
    const bool strings = !target.empty() && target.front().is_string();
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < node.size(); ++i) {
      const std::string sub = path + "[" + std::to_string(i) + "]";
      if (strings) {
        if (!node[i].IsScalar()) throw ConfigError(sub, "expected a string");
        out.push_back(node[i].as<std::string>());
      } else {
        out.push_back(yaml_number(node[i], sub));
      }
    }
    target = std::move(out);
  } else if (target.is_boolean()) {
    try {
      target = node.as<bool>();
    } catch (const YAML::Exception&) {
      throw ConfigError(path, "expected true or false");
    }
  } else if (target.is_number_unsigned()) {
    target = yaml_count(node, path);
  } else if (target.is_number() || target.is_null()) {
    if (target.is_null() && node.IsNull())
      return;
    target = yaml_number(node, path);
  } else if (target.is_string()) {
    if (!node.IsScalar()) throw ConfigError(path, "expected a string");
    target = node.as<std::string>();
  }
}

inline YAML::Node load_yaml_value(const std::string& text, const std::string& path) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(path, std::string("cannot parse value: ") + e.what());
  }
}

}  // namespace detail

// --set key.path=value; the value is read as YAML, so lists use [a, b].
inline void apply_override(nlohmann::ordered_json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError(assignment, "override must have the form key=value");
  const std::string key = assignment.substr(0, eq);
  nlohmann::ordered_json* at = &j;
  std::string path;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    path = detail::join_key(path, part);
    if (!at->is_object() || !at->contains(part)) throw ConfigError(path, "unknown key");
    at = &(*at)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  detail::merge_value(*at, detail::load_yaml_value(assignment.substr(eq + 1), key), key);
}

inline std::string section_of(const std::string& experiment) {
  if (experiment == "approx" || experiment == "illposed" || experiment == "counterexample" ||
      experiment == "resonance" || experiment == "suite")
    return experiment;
  return "";
}

// Validation of one experiment section ("" validates all of them).
inline void validate_config(const RunConfig& c, const std::string& experiment = "") {
  if (c.output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
  auto wrap = [](const std::string& section, auto&& fn) {
    try {
      fn();
    } catch (const PreconditionError& e) {
      throw ConfigError(section, e.what());
    }
  };
  const bool all = experiment.empty();
  if (all || experiment == "illposed") {
    const double s = c.illposed.s;
    if (!(s > s_lower && s < s_upper))
      throw ConfigError("illposed.s", "s = " + format_short(s) + " violates -7/24 < s < 3/4");
    wrap("illposed", [&] { validate(c.illposed); });
  }
  if (all || experiment == "approx") wrap("approx", [&] { validate(c.approx); });
  if (all || experiment == "counterexample") wrap("counterexample", [&] { validate(c.counterexample); });
  if (all || experiment == "resonance") wrap("resonance", [&] { validate(c.resonance); });
  if (all || experiment == "suite") wrap("suite", [&] { validate(c.suite); });
}

// Defaults, then the file (if any), then the overrides, then the output directory from the environment.
inline RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides = {},
                              const std::string& experiment = "") {
  nlohmann::ordered_json j = RunConfig{};
  if (!path.empty()) {
    if (!std::filesystem::exists(path)) throw ConfigError("", "config file not found: " + path);
    YAML::Node root;
    try {
      root = YAML::LoadFile(path);
    } catch (const YAML::ParserException& e) {
      throw ConfigError("", "parse error in " + path + ": " + e.what());
    } catch (const YAML::Exception& e) {
      throw ConfigError("", "cannot read " + path + ": " + e.what());
    }
    if (!root.IsNull() && !root.IsMap()) throw ConfigError("", "top level of " + path + " must be a mapping");
    detail::merge_value(j, root, "");
  }
  for (const auto& o : overrides) apply_override(j, o);
  RunConfig c = j.get<RunConfig>();
  if (const char* env = std::getenv(output_dir_env); env && *env) c.output_dir = env;
  validate_config(c, experiment);
  return c;
}

inline std::string to_yaml(const RunConfig& c) {
  const nlohmann::ordered_json j = c;
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  auto emit = [&](auto&& self, const nlohmann::ordered_json& v) -> void {
    if (v.is_object()) {
      out << YAML::BeginMap;
      for (const auto& [k, x] : v.items()) {
        out << YAML::Key << k << YAML::Value;
        self(self, x);
      }
      out << YAML::EndMap;
    } else if (v.is_array()) {
      out << YAML::Flow << YAML::BeginSeq;
      for (const auto& x : v) self(self, x);
      out << YAML::EndSeq;
    } else if (v.is_null()) {
      out << YAML::Null;
    } else if (v.is_boolean()) {
      out << v.get<bool>();
    } else if (v.is_number_unsigned()) {
      out << v.get<std::uint64_t>();
    } else if (v.is_number()) {
      out << v.get<double>();
    } else {
      out << v.get<std::string>();
    }
  };
  emit(emit, j);
  return std::string(out.c_str()) + "\n";
}

}  // namespace mkdv5
