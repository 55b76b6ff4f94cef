#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "mkdv5/cli_io.hpp"
#include "mkdv5/experiments.hpp"

using namespace mkdv5;

namespace {

ExperimentReport run(const std::string& name, const RunConfig& c) {
  if (name == "approx") return run_approximation_experiment(c.approx, c.seed);
  if (name == "illposed") return run_illposedness_experiment(c.illposed, c.seed);
  if (name == "counterexample") return run_counterexample_scan(c.counterexample, c.seed);
  if (name == "resonance") return run_resonance_experiment(c.resonance, c.seed);
  return run_validation_suite(c.suite, c.seed);
}

void summarize(const ExperimentReport& r, const WrittenFiles& files) {
  for (const auto& c : r.checks)
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << format_short(c.value) << " " << c.relation << " "
              << (c.relation == "in" ? "[" + format_short(c.target) + ", " + format_short(c.threshold) + "]"
                  : c.relation == "within" ? format_short(c.target) + " +- " + format_short(c.threshold)
                                           : format_short(c.threshold))
              << "\n";
  for (const auto& f : r.fits)
    std::cout << "fit " << f.name << ": " << format_short(f.slope) << " (95% CI " << format_short(f.ci_low) << " .. "
              << format_short(f.ci_high) << ")\n";
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << r.experiment << ": " << to_string(r.status) << " (" << files.json.string() << ", " << files.csv.string()
            << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for the fifth-order mKdV equation"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> overrides;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"validate", "check a configuration file and print it with defaults filled in"},
      {"approx", "wave-packet approximation error against N"},
      {"illposed", "amplification of H^s distances for two nearby packets"},
      {"counterexample", "trilinear ratio against N for the sheared-box counterexample"},
      {"resonance", "resonance identity, resonance relation and dyadic block estimates"},
      {"suite", "solver and multiplier oracles"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "YAML configuration file");
    sub->add_option("--set", overrides, "override a key, e.g. --set approx.eps=0.1")->take_all();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_ok : exit_config;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "validate") {
      const RunConfig c = parse_config(config_path, overrides);
      std::cout << to_yaml(c);
      return exit_ok;
    }
    const RunConfig c = parse_config(config_path, overrides, name);
    const ExperimentReport r = run(name, c);
    const std::filesystem::path dir = c.output_dir;
    const WrittenFiles files = write_report(r, dir);
    emit_plot_data(r, dir);
    summarize(r, files);
    return exit_code_for(r);
  } catch (...) {
    return exit_code_for_current_exception();
  }
}
