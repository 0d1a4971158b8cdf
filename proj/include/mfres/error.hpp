#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mfres {

// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (polynomial strings, corpus files, CLI arguments).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  explicit ParseError(const std::string& message)
      : Error(message), offset_(std::string::npos) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// The input is well formed but violates a mathematical hypothesis
// (invalid factorization, non-isolated singularity, wrong parity, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A quotient or homology module that was required to be finite-dimensional
// is not.
class InfiniteQuotientError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An internal consistency check failed. Indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace mfres
