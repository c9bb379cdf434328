#pragma once

#include <stdexcept>
#include <string>

namespace fixpt {

enum class ErrorKind {
  DimensionMismatch,
  Domain,
  UnsupportedSet,
  Unsupported,
  Precondition,
  Truncation,
  Inconclusive,
  Config,
  Io,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library. `kind` lets callers map errors onto
/// exit codes and diagnostics without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fixpt
