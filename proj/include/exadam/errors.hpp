#pragma once

#include <stdexcept>
#include <string>

namespace exadam {

// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

// Covers NonFiniteResult, NonFiniteGradient, NonFiniteMetric, NonFiniteLoss;
// the message names the offending quantity.
class NonFinite : public Error {
 public:
  using Error::Error;
};

// Invalid scalar/shape arguments: bad std, step < 1, dim < 1, layer shapes.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Config file problems and mismatched sweep configs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace exadam
