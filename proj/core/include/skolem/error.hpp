#pragma once

#include <stdexcept>
#include <string>

namespace skolem {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that does not have the required shape (wrong label counts,
/// positions out of range, unparsable text).
class MalformedInput : public Error {
 public:
  using Error::Error;
};

/// No sequence exists for the requested (variant, n).
class ExistenceError : public Error {
 public:
  using Error::Error;
};

/// The request exceeds what a method can compute (n too large for a guard,
/// modulus product too small for the result).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A set of job results does not cover the domain exactly once, or the
/// results disagree on shared parameters.
class CoverageError : public Error {
 public:
  using Error::Error;
};

/// Duplicate runs of the same job produced different residues, or an
/// internal consistency check on accumulated values failed.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// A temperature ladder could not be constructed or is malformed.
class LadderError : public Error {
 public:
  using Error::Error;
};

}  // namespace skolem
