#pragma once

#include <stdexcept>
#include <string>

namespace gsp4 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotInvertible : public Error {
  using Error::Error;
};

class NotPrime : public Error {
  using Error::Error;
};

class OutOfRange : public Error {
  using Error::Error;
};

class IoError : public Error {
  using Error::Error;
};

class FormatError : public Error {
  using Error::Error;
};

class PrimeMismatch : public Error {
  using Error::Error;
};

/// A Lemma-level equivalence failed on a concrete pair; always a bug.
class EquivalenceViolation : public Error {
  using Error::Error;
};

/// A bracket-table identity failed; always a bug.
class IdentityViolation : public Error {
  using Error::Error;
};

class SimilitudeMismatch : public Error {
  using Error::Error;
};

class NotInAlgebra : public Error {
  using Error::Error;
};

class NotInGroup : public Error {
  using Error::Error;
};

}  // namespace gsp4
