#pragma once

#include <stdexcept>
#include <string>

namespace convseq {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-side hypothesis was violated (bad input, unmet theorem
/// condition). The CLI maps these to exit code 2.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};
class DomainError : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};
class ParamError : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};
class UnknownCatalogEntry : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};
class ArityError : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};
class LengthError : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};
class DivisionByZeroLeadingCoefficient : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};
class InsufficientData : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};
class DegenerateError : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};
class PreconditionError : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};
class SingularMatrix : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};
class ConfigError : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};

/// binary64 overflow while promoting an exact value.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Floating arithmetic produced NaN or an infinite value, or an exact
/// division by zero was attempted.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace convseq
