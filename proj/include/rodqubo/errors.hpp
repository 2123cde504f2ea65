#pragma once

#include <stdexcept>
#include <string>

namespace rodqubo {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bit assignment does not cover a variable that the evaluated object uses.
class MissingVariableError : public Error {
 public:
  MissingVariableError(std::size_t variable, const std::string& what)
      : Error(what), variable_(variable) {}
  std::size_t variable() const noexcept { return variable_; }

 private:
  std::size_t variable_;
};

class UnsupportedDegreeError : public Error {
 public:
  using Error::Error;
};

/// Bad problem description, configuration or argument.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionGuardError : public Error {
 public:
  using Error::Error;
};

// Remote sampler failures. Each failure mode has its own type so callers
// can react differently to a dead endpoint and to a lying one.
class RemoteSamplerError : public Error {
 public:
  using Error::Error;
};
class TransportError : public RemoteSamplerError {
 public:
  using RemoteSamplerError::RemoteSamplerError;
};
class TimeoutError : public RemoteSamplerError {
 public:
  using RemoteSamplerError::RemoteSamplerError;
};
class MalformedResponseError : public RemoteSamplerError {
 public:
  using RemoteSamplerError::RemoteSamplerError;
};
class EnergyMismatchError : public RemoteSamplerError {
 public:
  using RemoteSamplerError::RemoteSamplerError;
};

}  // namespace rodqubo
