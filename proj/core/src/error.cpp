#include "gbnl/error.hpp"

namespace gbnl {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInternal: return "internal";
    case ErrorCode::kUsage: return "usage";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kJoinMismatch: return "join-mismatch";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kCapExceeded: return "cap-exceeded";
    case ErrorCode::kArgument: return "argument";
    case ErrorCode::kNumeric: return "numeric";
  }
  return "unknown";
}

void raise(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace gbnl
