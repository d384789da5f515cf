#include "rdm/error.hpp"

#include <fstream>

#include "rdm/bytes.hpp"

namespace rdm {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SchemaNotFound: return "SCHEMA_NOT_FOUND";
    case ErrorCode::Validation: return "VALIDATION";
    case ErrorCode::Cycle: return "CYCLE";
    case ErrorCode::NotFound: return "NOTFOUND";
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::Truncated: return "TRUNCATED";
    case ErrorCode::Encoding: return "ENCODING";
    case ErrorCode::BadType: return "BADTYPE";
    case ErrorCode::Syntax: return "SYNTAX";
    case ErrorCode::Domain: return "DOMAIN";
    case ErrorCode::Io: return "IO";
    case ErrorCode::Corrupt: return "CORRUPT";
    case ErrorCode::Vocab: return "VOCAB";
    case ErrorCode::Empty: return "EMPTY";
    case ErrorCode::Header: return "HEADER";
    case ErrorCode::Shape: return "SHAPE";
    case ErrorCode::Unauthorized: return "UNAUTHORIZED";
    case ErrorCode::Busy: return "BUSY";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) fail(ErrorCode::Io, "read failed: " + path.string());
  return data;
}

void write_file(const std::filesystem::path& path, ByteView data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) fail(ErrorCode::Io, "write failed: " + path.string());
}

}  // namespace rdm
