#pragma once

#include <stdexcept>
#include <string>

namespace beliefkit {

/// Base class for every failure that stems from the input data rather than
/// from misuse of the command line. The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NormalizationError : public DomainError {
 public:
  using DomainError::DomainError;
};

class FrameTooLarge : public DomainError {
 public:
  using DomainError::DomainError;
};

class FrameMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

class TotalConflict : public DomainError {
 public:
  using DomainError::DomainError;
};

class ZeroPlausibility : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidRefining : public DomainError {
 public:
  using DomainError::DomainError;
};

class IntractableInstance : public DomainError {
 public:
  using DomainError::DomainError;
};

class NonConvergence : public DomainError {
 public:
  using DomainError::DomainError;
};

class NoAdmissibleSubstitution : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotRealizable : public DomainError {
 public:
  using DomainError::DomainError;
};

class SchemaError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace beliefkit
