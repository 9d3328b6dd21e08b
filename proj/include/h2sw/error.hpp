#pragma once

#include <stdexcept>
#include <string>

namespace h2sw {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data violates a type invariant (bad norms, weights, shapes).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent configuration: mismatched specs, unsupported space/function pairs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Gradient requested at a point where the defining function is not differentiable.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Operation is valid mathematically but not implemented for these inputs.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A size guard was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An integration step produced an unusable state.
class DegenerateStepError : public Error {
 public:
  using Error::Error;
};

}  // namespace h2sw
