#include "rdm/service/errors.hpp"

#include "rdm/core/validation.hpp"

namespace rdm {

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::Cycle:
    case ErrorCode::Busy: return 409;
    case ErrorCode::Unauthorized: return 401;
    case ErrorCode::SchemaNotFound:
    case ErrorCode::InvalidArgument:
    case ErrorCode::Parse: return 400;
    case ErrorCode::Validation:
    case ErrorCode::Truncated:
    case ErrorCode::Encoding:
    case ErrorCode::BadType:
    case ErrorCode::Syntax:
    case ErrorCode::Domain:
    case ErrorCode::Vocab:
    case ErrorCode::Empty:
    case ErrorCode::Header:
    case ErrorCode::Shape: return 422;
    case ErrorCode::Io:
    case ErrorCode::Corrupt: return 500;
  }
  return 500;
}

ErrorCode error_code_of(const std::exception& e) noexcept {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return err->code();
  return ErrorCode::Io;
}

nlohmann::json error_body(const std::exception& e) {
  const auto* err = dynamic_cast<const Error*>(&e);
  nlohmann::json body = {{"code", err ? std::string(to_string(err->code())) : "INTERNAL"},
                         {"message", e.what()}};
  if (const auto* v = dynamic_cast<const ValidationError*>(&e))
    body["violations"] = to_json(v->report()).at("violations");
  return {{"error", body}};
}

}  // namespace rdm
