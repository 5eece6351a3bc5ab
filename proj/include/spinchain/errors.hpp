#pragma once

#include <stdexcept>
#include <string>

namespace spinchain {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidLengthError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inverse eigenvalue reconstruction did not reproduce its target spectrum.
class ReconstructionError : public Error {
 public:
  ReconstructionError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class SearchFailedError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace spinchain
