#pragma once

#include <stdexcept>
#include <string>

namespace tropreal {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (zero vector, t outside (0,1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A required value assignment is missing or inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A vertex or a corner of the fundamental domain lies on a wall.
class DegenerateOffsetError : public Error {
 public:
  DegenerateOffsetError(std::string element, const std::string& what)
      : Error(what), element_(std::move(element)) {}
  const std::string& element() const noexcept { return element_; }

 private:
  std::string element_;
};

/// Point constraints are unusable: wrong number of marks or not rigid.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

}  // namespace tropreal
