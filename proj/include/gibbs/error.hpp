#pragma once

#include <stdexcept>
#include <string>

namespace gibbs {

// Base class for every error raised by the library. Messages are prefixed
// with the module that raised them, e.g. "transfer: ...".
class Error : public std::runtime_error {
 public:
  Error(const std::string& module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(module) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

// Malformed input: bad matrix entries, inadmissible words, wrong sizes.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The system is not exact (transition matrix not primitive), so pressure and
// KMS computations are undefined.
class NotExactError : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed the configured word or orbit cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

// An iterative solver ran out of iterations.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace gibbs
