// Exception types shared by every module.

#pragma once

#include <stdexcept>
#include <string>

namespace qaslopes {

/// A value violates an operation's precondition (e.g. a continued fraction
/// requested for a slope <= 1).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Text input (slopes, PD codes, fiber lists, CSV/JSON files) is malformed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally well-formed data that fails validation, e.g. a database
/// entry whose stored determinant disagrees with its diagram.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qaslopes
