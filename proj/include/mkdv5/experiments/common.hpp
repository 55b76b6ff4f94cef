#pragma once

#include <charconv>
#include <chrono>
#include <cstdio>
#include <string>
#include <utility>

#include "../errors.hpp"

namespace mkdv5 {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Runs fn and rethrows any library error with the label prepended, keeping its type.
template <class Fn>
auto with_context(const std::string& label, Fn&& fn) -> decltype(fn()) {
  try {
    return std::forward<Fn>(fn)();
  } catch (const CapacityError& e) {
    throw CapacityError(label + ": " + e.what());
  } catch (const ResolutionError& e) {
    throw ResolutionError(label + ": " + e.what());
  } catch (const PreconditionError& e) {
    throw PreconditionError(label + ": " + e.what());
  } catch (const NumericalGuardError& e) {
    throw NumericalGuardError(label + ": " + e.what());
  } catch (const UsageError& e) {
    throw UsageError(label + ": " + e.what());
  }
}

inline std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Shortest text that reads back to the same double, for labels and messages.
inline std::string format_short(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline std::string describe_grid(const std::string& name, double length, std::size_t points) {
  return name + ": L=" + format_short(length) + " n=" + std::to_string(points);
}

}  // namespace mkdv5
