#ifndef COHTOMO_ERRORS_HPP
#define COHTOMO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cohtomo {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid data handed to the library: wrong sizes, malformed documents,
/// out-of-range parameters.  The command-line tool maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A computation failed numerically even though the inputs were well formed.
/// The command-line tool maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

class NormalizationError : public InputError {
 public:
  using InputError::InputError;
};

class RangeError : public InputError {
 public:
  using InputError::InputError;
};

class UnitarityError : public InputError {
 public:
  using InputError::InputError;
};

/// Measurement records do not cover a plan's settings exactly once.
class PlanMismatchError : public InputError {
 public:
  using InputError::InputError;
};

/// A structured document failed to parse or failed schema validation.
class DocumentError : public InputError {
 public:
  using InputError::InputError;
};

/// A tensor or matrix violated a required symmetry beyond tolerance.
class SymmetryError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A group system could not be solved to the required residual.
class SingularSystemError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace cohtomo

#endif  // COHTOMO_ERRORS_HPP
