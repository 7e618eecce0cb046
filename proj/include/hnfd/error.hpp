#pragma once

#include <stdexcept>
#include <string>

namespace hnfd {

/// Failure categories shared by every module. The C API maps these
/// one-to-one onto hnfd_status codes.
enum class ErrorKind {
  config,       // invalid SampleConfig
  dimension,    // shape mismatch, index out of range
  domain,       // mathematically undefined input (e.g. zeta at s < 2)
  parameter,    // malformed argument
  unsupported,  // outside the range covered by the density results
  range,        // integer outside the supported factorization range
  parse,        // malformed matrix text
  io,           // file could not be read or written
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace hnfd
