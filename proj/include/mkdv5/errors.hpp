#pragma once

#include <stdexcept>
#include <string>

namespace mkdv5 {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResolutionError : PreconditionError {
  using PreconditionError::PreconditionError;
};

struct CapacityError : PreconditionError {
  using PreconditionError::PreconditionError;
};

struct NumericalGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  ConfigError(std::string key, const std::string& reason)
      : std::runtime_error(key.empty() ? reason : key + ": " + reason), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace mkdv5
