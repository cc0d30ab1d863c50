#pragma once

#include <stdexcept>
#include <string>

namespace fusionq {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid family/rank combination or other malformed construction input.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class LevelMismatch : public Error {
 public:
  using Error::Error;
};

class NotDominant : public Error {
 public:
  using Error::Error;
};

class NotAnAutomorphism : public Error {
 public:
  using Error::Error;
};

// No Kirillov-Reshetikhin decomposition data for the requested (family, vertex).
class KRDataUnavailable : public Error {
 public:
  using Error::Error;
};

// The floating point S-matrix oracle cannot be built for this input (rank cap).
class OracleUnavailable : public Error {
 public:
  using Error::Error;
};

// A numeric residual exceeded its tolerance, or an iteration failed to converge.
class NumericDegradation : public Error {
 public:
  using Error::Error;
};

// A search that is guaranteed to succeed on valid input did not.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace fusionq
