#ifndef MUSTAFIN_ERRORS_HPP
#define MUSTAFIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mustafin {

/// Operands live in different rings or fields.
class RingMismatchError : public std::invalid_argument {
 public:
  explicit RingMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

/// Division by zero in a field, or reduction of a rational whose
/// denominator vanishes in the residue field.
class DivisionByZeroError : public std::domain_error {
 public:
  explicit DivisionByZeroError(const std::string& what) : std::domain_error(what) {}
};

/// A precondition on an argument was violated.
class InvalidArgumentError : public std::invalid_argument {
 public:
  explicit InvalidArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed polynomial text.
class ParseError : public std::invalid_argument {
 public:
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

/// The Groebner step budget (MUSTAFIN_GB_STEP_LIMIT) was exhausted.
class StepLimitError : public std::runtime_error {
 public:
  explicit StepLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mustafin

#endif  // MUSTAFIN_ERRORS_HPP
