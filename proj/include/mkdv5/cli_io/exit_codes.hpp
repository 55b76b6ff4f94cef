#pragma once

#include <exception>
#include <iostream>

#include "../errors.hpp"
#include "../experiments/report.hpp"

namespace mkdv5 {

enum ExitCode : int {
  exit_ok = 0,
  exit_other = 1,
  exit_config = 2,
  exit_precondition = 3,
  exit_numerical_guard = 4,
  exit_acceptance = 5,
  exit_inconclusive = 6,
};

inline int exit_code_for(const ExperimentReport& r) {
  switch (r.status) {
    case ReportStatus::fail: return exit_acceptance;
    case ReportStatus::inconclusive: return exit_inconclusive;
    default: return exit_ok;
  }
}

// Maps the library's exception types to exit codes; call from inside a catch block.
inline int exit_code_for_current_exception(std::ostream& err = std::cerr) {
  try {
    throw;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const PreconditionError& e) {
    err << "precondition error: " << e.what() << "\n";
    return exit_precondition;
  } catch (const NumericalGuardError& e) {
    err << "numerical guard: " << e.what() << "\n";
    return exit_numerical_guard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_other;
  }
}

}  // namespace mkdv5
