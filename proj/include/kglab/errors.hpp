#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kg {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was violated (bad mass, k = 0, a <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Quadrature or a time march could not deliver the requested accuracy.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

/// Non-finite value detected while stepping the field.
class InstabilityError : public NumericFailure {
 public:
  InstabilityError(std::size_t step, const std::string& what)
      : NumericFailure("instability at step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Invalid run configuration. `key()` is the dotted path of the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace kg
