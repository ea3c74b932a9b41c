#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dyntop {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A shift or index reached past the truncation horizon.
class HorizonError : public Error {
 public:
  using Error::Error;
};

// Argument outside the documented bounds of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Word, point or open set not in the language of the system.
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Raised by the counterexample construction when the generators share a
// common element, so no counterexample exists.
class FipHoldsError : public Error {
 public:
  explicit FipHoldsError(std::size_t witness)
      : Error("generators have common element " + std::to_string(witness)),
        witness_(witness) {}

  std::size_t witness() const noexcept { return witness_; }

 private:
  std::size_t witness_;
};

}  // namespace dyntop
