#include <string>

#include "rdm/error.hpp"
#include "rdm/extract/parsers.hpp"
#include "text_util.hpp"

namespace rdm {

RawKeyValues parse_vendor_c(ByteView bytes, Warnings& warnings) {
  if (!detail::is_valid_utf8(bytes)) fail(ErrorCode::Encoding, "vendorC file is not UTF-8");
  const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());

  RawKeyValues raw;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = detail::trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == ';' || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        fail(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": malformed section header");
      section = std::string(detail::trim(line.substr(1, line.size() - 2)));
      continue;
    }
    if (section.empty())
      fail(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": key outside any section");
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": expected Key=Value");
    const auto key_part = detail::trim(line.substr(0, eq));
    if (key_part.empty())
      fail(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": empty key");
    const auto value_part = detail::trim(line.substr(eq + 1));

    RawEntry entry{section + "." + std::string(key_part), std::string(value_part), std::nullopt};
    if (auto number = detail::parse_number(value_part)) entry.value = *number;

    bool replaced = false;
    for (auto& e : raw.entries) {
      if (e.key == entry.key) {
        warnings.push_back("line " + std::to_string(line_no) + ": duplicate key '" + entry.key +
                           "', last value wins");
        e = entry;
        replaced = true;
      }
    }
    if (!replaced) raw.entries.push_back(std::move(entry));
  }
  return raw;
}

RawKeyValues parse_vendor_c(ByteView bytes) {
  Warnings ignored;
  return parse_vendor_c(bytes, ignored);
}

}  // namespace rdm
