#pragma once

#include <exception>

#include <nlohmann/json.hpp>

#include "rdm/error.hpp"

namespace rdm {

// HTTP status for every error code.
int http_status(ErrorCode code) noexcept;

// {"error": {"code": ..., "message": ..., "violations"?: [...]}}
nlohmann::json error_body(const std::exception& e);
ErrorCode error_code_of(const std::exception& e) noexcept;

}  // namespace rdm
