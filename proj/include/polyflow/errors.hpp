#pragma once

#include <stdexcept>
#include <string>

namespace polyflow {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Invalid argument shapes, sizes, or values detected before any numerics run.
class ValidationError : public Error {
public:
  using Error::Error;
};

// Two fields over different cycle sizes were combined.
class SizeMismatch : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// A prescribed edge length is zero or negative.
class NonPositiveLength : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// An edge vector collapsed below the resolvable floor; turning angles and
// length ratios are undefined there.
class ZeroEdge : public Error {
public:
  using Error::Error;
};

// Three points fed to the circumcenter construction lie on a line.
class CollinearPoints : public Error {
public:
  using Error::Error;
};

// Two points fed to the circumcenter construction coincide.
class DuplicatePoints : public Error {
public:
  using Error::Error;
};

// A whole polygon is collinear; it sits in the singular set where the
// turning field and the gradient are undefined.
class CollinearPolygon : public Error {
public:
  using Error::Error;
};

// A polygon violates its length constraints beyond the admitted tolerance.
class ConstraintViolation : public Error {
public:
  using Error::Error;
};

// A polygon expected to lie on a circle does not, within tolerance.
class NotCocyclic : public Error {
public:
  using Error::Error;
};

// The length reprojection iteration failed to reach tolerance.
class NewtonDivergence : public Error {
public:
  using Error::Error;
};

// Random initialisation exhausted its retry budget.
class InitFailure : public Error {
public:
  using Error::Error;
};

// Filesystem-level failure (open, read, write).
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace polyflow
