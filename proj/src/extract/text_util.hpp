#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <string_view>

#include "rdm/bytes.hpp"
#include "rdm/extract/raw.hpp"

namespace rdm::detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Integers stay integral so that counts survive a round trip unchanged.
inline std::optional<RawValue> parse_number(std::string_view token) {
  if (token.empty()) return std::nullopt;
  const char* first = token.data();
  const char* last = first + token.size();
  if (token.find_first_not_of("+-0123456789") == std::string_view::npos) {
    std::int64_t i = 0;
    if (*first == '+') ++first;
    auto [p, ec] = std::from_chars(first, last, i);
    if (ec == std::errc{} && p == last) return RawValue{i};
    first = token.data();
  }
  double d = 0;
  if (*first == '+') ++first;
  auto [p, ec] = std::from_chars(first, last, d);
  if (ec == std::errc{} && p == last) return RawValue{d};
  return std::nullopt;
}

bool is_valid_utf8(ByteView bytes) noexcept;

}  // namespace rdm::detail
