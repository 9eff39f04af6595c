#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ck {

/// Invalid argument: bad index, length mismatch, non-finite scalar.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input violates an operation's precondition (e.g. not a group element).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Canonical coordinates cannot be recovered at a factorization stage.
class DegeneracyError : public std::runtime_error {
 public:
  DegeneracyError(std::size_t stage, const std::string& what)
      : std::runtime_error("stage " + std::to_string(stage) + ": " + what), stage_(stage) {}

  [[nodiscard]] std::size_t stage() const noexcept { return stage_; }

 private:
  std::size_t stage_;
};

/// Inconsistent configuration (sampler truncation, representation context).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested feature lies outside the implemented theory (zero-radius orbits).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ck
