#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crowdbound {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or argument lies outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// An observation lies outside the support of the requested family.
class SupportError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Data carry no usable variation (e.g. zero variance).
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

/// Centralization of a single agent is undefined.
class UndefinedCentralizationError : public Error {
 public:
  using Error::Error;
};

/// The influence chain is reducible or periodic; no unique fixed point.
class ReducibleChainError : public Error {
 public:
  using Error::Error;
};

/// The optimization constraint set is empty.
class InfeasibleConstraintError : public Error {
 public:
  using Error::Error;
};

/// Logistic likelihood has no finite maximizer (perfect separation).
class SeparationError : public Error {
 public:
  using Error::Error;
};

/// Design matrix is rank deficient.
class CollinearityError : public Error {
 public:
  using Error::Error;
};

/// A task's outcomes cannot be standardized (fewer than two trials or zero variance).
class DegenerateTaskError : public Error {
 public:
  using Error::Error;
};

/// The trial partition cannot support the requested model.
class InsufficientDesignError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace crowdbound
