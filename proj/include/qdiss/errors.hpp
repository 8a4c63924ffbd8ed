#pragma once

#include <stdexcept>
#include <string>

namespace qdiss {

// A precondition on a value or parameter was violated.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A protocol cannot be constructed at the requested parameters.
class ProtocolUnavailable : public std::runtime_error {
 public:
  ProtocolUnavailable(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Reading or writing a file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qdiss
