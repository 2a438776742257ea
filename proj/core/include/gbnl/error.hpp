#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gbnl {

/// Error families. The numeric values double as process exit codes for the
/// command-line tool and are part of its documented interface.
enum class ErrorCode : int {
  kInternal = 1,
  kUsage = 2,
  kConfig = 3,        ///< malformed input file: missing column, duplicate id, bad schema
  kJoinMismatch = 4,  ///< ids that do not line up between matrix, labels or embeddings
  kValidation = 5,    ///< engine equivalence check found a counterexample
  kIo = 6,
  kCapExceeded = 7,   ///< brute-force oracle refused an oversized input
  kArgument = 8,      ///< precondition violated by a caller
  kNumeric = 9,       ///< non-finite values or degenerate statistics
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace gbnl
