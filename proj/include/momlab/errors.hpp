#pragma once

#include <stdexcept>
#include <string>

namespace momlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSpectrum : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(actual)) {}
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Raised when the closed-form and the real-valued structure disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A theorem hypothesis was violated. Carries the violated inequality in
/// readable form and the threshold it was checked against.
class PreconditionError : public Error {
 public:
  PreconditionError(std::string inequality, double threshold)
      : Error("precondition violated: " + inequality),
        inequality_(std::move(inequality)),
        threshold_(threshold) {}

  const std::string& inequality() const noexcept { return inequality_; }
  double threshold() const noexcept { return threshold_; }

 private:
  std::string inequality_;
  double threshold_;
};

/// Whether theorem hypotheses (cond >= 28, eps <= 1/cond, ...) are hard
/// errors or are skipped for exploration.
enum class Hypotheses { enforce, relax };

}  // namespace momlab
