#pragma once

#include <stdexcept>
#include <string>

namespace medr {

// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (CSV rows, config files, JSON bodies). CLI exit code 3.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally well-formed input that breaks a domain invariant. CLI exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A computation was refused because it would exhaust memory or time budgets.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Service-level lookup failure (HTTP 404).
class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Service-level state conflict, e.g. bidding on a closed auction (HTTP 409).
class ConflictError : public Error {
 public:
  using Error::Error;
};

}  // namespace medr
