#include <cstring>
#include <string>

#include "rdm/error.hpp"
#include "rdm/extract/parsers.hpp"
#include "text_util.hpp"

namespace rdm {

namespace {

constexpr std::size_t kHeaderSize = 12;

std::uint32_t read_u32le(const std::uint8_t* p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
         std::uint32_t(p[3]) << 24;
}

void upsert(RawKeyValues& raw, RawEntry entry, Warnings& warnings, std::size_t line_no) {
  for (auto& e : raw.entries) {
    if (e.key == entry.key) {
      warnings.push_back("line " + std::to_string(line_no) + ": duplicate key '" + entry.key +
                         "', last value wins");
      e = std::move(entry);
      return;
    }
  }
  raw.entries.push_back(std::move(entry));
}

}  // namespace

RawKeyValues parse_vendor_a(ByteView bytes, Warnings& warnings) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagicA, 8) != 0)
    fail(ErrorCode::Parse, "missing vendorA signature");
  if (bytes.size() < kHeaderSize) fail(ErrorCode::Truncated, "vendorA header is cut short");
  const std::uint32_t length = read_u32le(bytes.data() + 8);
  if (length > bytes.size() - kHeaderSize)
    fail(ErrorCode::Truncated, "vendorA metadata block of " + std::to_string(length) +
                                   " bytes exceeds the file");
  RawKeyValues raw;
  if (length == 0) {
    warnings.push_back("vendorA metadata block is empty");
    return raw;
  }
  const auto block = bytes.subspan(kHeaderSize, length);
  if (!detail::is_valid_utf8(block))
    fail(ErrorCode::Encoding, "vendorA metadata block is not valid UTF-8");

  const std::string_view text(reinterpret_cast<const char*>(block.data()), block.size());
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = detail::trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      warnings.push_back("line " + std::to_string(line_no) + ": no '=' separator, ignored");
      continue;
    }
    RawEntry entry{std::string(detail::trim(line.substr(0, eq))), std::string{}, std::nullopt};
    const auto rest = detail::trim(line.substr(eq + 1));
    const auto split = rest.find_first_of(" \t");
    const auto token = rest.substr(0, split);
    const auto unit =
        split == std::string_view::npos ? std::string_view{} : detail::trim(rest.substr(split));
    if (auto number = detail::parse_number(token)) {
      entry.value = *number;
      if (!unit.empty()) entry.declared_unit = std::string(unit);
    } else {
      entry.value = std::string(rest);
    }
    upsert(raw, std::move(entry), warnings, line_no);
  }
  return raw;
}

RawKeyValues parse_vendor_a(ByteView bytes) {
  Warnings ignored;
  return parse_vendor_a(bytes, ignored);
}

}  // namespace rdm
