#include "secroute/error.hpp"

namespace secroute {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameter: return "invalid-parameter";
    case ErrorKind::kInvalidGeometry: return "invalid-geometry";
    case ErrorKind::kDegenerateGeometry: return "degenerate-geometry";
    case ErrorKind::kInfeasible: return "infeasible";
    case ErrorKind::kUnreachable: return "unreachable";
    case ErrorKind::kInvalidInstance: return "invalid-instance";
    case ErrorKind::kExhausted: return "exhausted";
    case ErrorKind::kResourceLimit: return "resource-limit";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kParse: return "parse";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace secroute
