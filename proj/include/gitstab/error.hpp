#pragma once

#include <stdexcept>
#include <string>

namespace gitstab {

enum class ErrorCode {
  DimensionMismatch,
  InvalidArgument,
  SingularFrame,
  BlockDegenerate,
  NoGap,
  Degenerate,
  Schema,
  Internal,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. The code lets callers (and the CLI
/// exit-code contract) tell input problems from mathematical outcomes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gitstab
