#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace secroute {

enum class ErrorKind {
  kInvalidParameter,
  kInvalidGeometry,
  kDegenerateGeometry,
  kInfeasible,
  kUnreachable,
  kInvalidInstance,
  kExhausted,
  kResourceLimit,
  kIo,
  kParse,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so that callers (the CLI
// in particular) can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace secroute
