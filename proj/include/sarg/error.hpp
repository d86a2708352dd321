#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sarg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation exactly at a pole (e.g. s = 1 for the Hurwitz zeta function).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The requested accuracy could not be reached; carries the best estimate.
class PrecisionError : public Error {
 public:
  PrecisionError(const std::string& what, double best_estimate)
      : Error(what), best_estimate_(best_estimate) {}
  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

/// L(s, chi) too small for its logarithmic derivative to be certified.
class NearZeroError : public Error {
 public:
  NearZeroError(const std::string& what, double abs_l) : Error(what), abs_l_(abs_l) {}
  double abs_l() const noexcept { return abs_l_; }

 private:
  double abs_l_;
};

/// Step refinement (path tracking, quadrature) ran out of budget.
class RefinementError : public Error {
 public:
  RefinementError(const std::string& what, double achieved) : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// An argument-principle contour passes through (or too close to) a zero.
class ContourError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input; line is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Stored data disagrees with what it claims to describe.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// A zero list is not certified complete where completeness is required.
class CertificationError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration value; key() names the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : Error(key + ": " + what), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace sarg
