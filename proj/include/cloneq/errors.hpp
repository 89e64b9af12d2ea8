#pragma once

#include <stdexcept>
#include <string>

namespace cloneq {

// Base class for all cloneq errors.
struct CloneqError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotSquare : CloneqError {
  using CloneqError::CloneqError;
};

struct NotHermitian : CloneqError {
  using CloneqError::CloneqError;
};

struct DimensionMismatch : CloneqError {
  using CloneqError::CloneqError;
};

struct NotDensityMatrix : CloneqError {
  using CloneqError::CloneqError;
};

struct NotOrthonormal : CloneqError {
  using CloneqError::CloneqError;
};

struct NotUnit : CloneqError {
  using CloneqError::CloneqError;
};

struct QOutOfRange : CloneqError {
  using CloneqError::CloneqError;
};

struct NotPrime : CloneqError {
  using CloneqError::CloneqError;
};

struct TooManyBases : CloneqError {
  using CloneqError::CloneqError;
};

// Malformed JSON input (bad field, wrong shape, non-finite entry).
struct InputError : CloneqError {
  using CloneqError::CloneqError;
};

}  // namespace cloneq
