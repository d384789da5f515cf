#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rdm {

// Every failure surfaced by the library carries one of these codes. The HTTP
// layer maps each code to exactly one status, the CLI maps all of them to
// exit code 1.
enum class ErrorCode {
  SchemaNotFound,
  Validation,
  Cycle,
  NotFound,
  Parse,
  Truncated,
  Encoding,
  BadType,
  Syntax,
  Domain,
  Io,
  Corrupt,
  Vocab,
  Empty,
  Header,
  Shape,
  Unauthorized,
  Busy,
  InvalidArgument,
};

inline constexpr ErrorCode kAllErrorCodes[] = {
    ErrorCode::SchemaNotFound, ErrorCode::Validation, ErrorCode::Cycle,   ErrorCode::NotFound,
    ErrorCode::Parse,          ErrorCode::Truncated,  ErrorCode::Encoding, ErrorCode::BadType,
    ErrorCode::Syntax,         ErrorCode::Domain,     ErrorCode::Io,       ErrorCode::Corrupt,
    ErrorCode::Vocab,          ErrorCode::Empty,      ErrorCode::Header,   ErrorCode::Shape,
    ErrorCode::Unauthorized,   ErrorCode::Busy,       ErrorCode::InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace rdm
