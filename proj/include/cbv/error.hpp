#pragma once

#include <stdexcept>
#include <string>

namespace cbv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value fell outside the domain of a function or closed form.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Bad arguments from a caller: unknown ids, out-of-range parameters.
class UsageError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A declared tail-bound hypothesis was contradicted by the data.
class TailHypothesisViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace cbv
