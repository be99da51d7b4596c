#ifndef GGSUM_ERRORS_HPP
#define GGSUM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ggsum {

/// Base class of every failure raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, malformed configuration, arguments outside an
/// operation's domain.  Mapped to CLI exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Numerical failure during evaluation.  Mapped to CLI exit code 3.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A tolerance could not be met; carries the error estimate actually reached.
class AccuracyError : public NumericError {
 public:
  AccuracyError(const std::string& what, double achieved)
      : NumericError(what), achieved_(achieved) {}
  double achieved_error() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class IllConditioningError : public NumericError {
 public:
  using NumericError::NumericError;
};

class OptimizationError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace ggsum

#endif
