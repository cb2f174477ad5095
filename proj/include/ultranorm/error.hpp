#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ultranorm {

/// Base class for every error raised by the library. `kind()` is a stable
/// machine-readable tag used in the CLI's structured error output.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class FieldMismatch : public Error {
 public:
  explicit FieldMismatch(const std::string& what) : Error("field-mismatch", what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what)
      : Error("dimension-mismatch", what) {}
};

class DivisionByZero : public Error {
 public:
  explicit DivisionByZero(const std::string& what) : Error("division-by-zero", what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("invalid-argument", what) {}
};

/// Malformed textual input. `token()` is the offending piece of text.
class ParseError : public Error {
 public:
  ParseError(std::string token, const std::string& what)
      : Error("parse-error", what + ": '" + token + "'"), token_(std::move(token)) {}

  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

class PreconditionViolation : public Error {
 public:
  explicit PreconditionViolation(const std::string& what)
      : Error("precondition-violation", what) {}
};

/// An enumeration would exceed its cap. For segments `size_exponent()` is k,
/// the number of differing coordinates.
class EnumerationTooLarge : public Error {
 public:
  EnumerationTooLarge(std::size_t size_exponent, const std::string& what)
      : Error("enumeration-too-large", what), size_exponent_(size_exponent) {}

  std::size_t size_exponent() const noexcept { return size_exponent_; }

 private:
  std::size_t size_exponent_;
};

class HypothesisViolation : public Error {
 public:
  explicit HypothesisViolation(const std::string& what)
      : Error("hypothesis-violation", what) {}
};

}  // namespace ultranorm
