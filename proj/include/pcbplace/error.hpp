// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace pcbplace {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Problems with user-supplied data: malformed files, broken invariants,
/// impossible generator requests. The CLI maps these to exit code 2.
class ValidationError : public Error {
public:
  using Error::Error;
};

class MalformedFileError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class ConstraintViolation : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class GenerationInfeasible : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class IncompletePlacementError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class IndexError : public Error {
public:
  using Error::Error;
};

class ShapeError : public Error {
public:
  using Error::Error;
};

class NonFiniteGradientError : public Error {
public:
  using Error::Error;
};

class ProtocolError : public Error {
public:
  using Error::Error;
};

class OracleScaleError : public Error {
public:
  using Error::Error;
};

} // namespace pcbplace
