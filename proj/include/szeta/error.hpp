#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace szeta {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument hits a pole of Gamma (or of a completed gamma factor).
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition on the arguments does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Requested size exceeds a configured memory or height cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A zero set does not reach the height an operation needs.
class CompletenessError : public Error {
 public:
  using Error::Error;
};

/// A numerical self-check failed (e.g. Hardy Z not real to tolerance).
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// Conductor too small for an asymptotic main term to be meaningful.
class ThresholdError : public Error {
 public:
  using Error::Error;
};

/// Input file problems. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Error bounds cannot meet the requested tolerance.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Ingested data disagrees with independently computed values.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// Bad command-line or config-file values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace szeta
