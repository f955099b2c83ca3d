#pragma once

#include <stdexcept>
#include <string>

namespace advcurate {

/// Malformed input file or stream. The message names the offending row/column.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative numerical routine failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The generative label model cannot be fit to the given matrix.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pipeline or generator configuration violates a field range.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace advcurate
