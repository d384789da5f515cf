#pragma once

#include <string>

#include "rdm/bytes.hpp"

namespace rdm {

// Lowercase hex SHA-256 digest.
std::string sha256_hex(ByteView data);

std::string base64_encode(ByteView data);

}  // namespace rdm
