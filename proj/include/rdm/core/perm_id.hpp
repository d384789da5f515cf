#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "rdm/time.hpp"

namespace rdm {

// Immutable object identifier: 17-digit UTC timestamp "YYYYMMDDhhmmssSSS", a
// hyphen, and a positive decimal sequence number, e.g. "20231204123456789-42".
class PermId {
 public:
  PermId() = default;

  // Throws Error{Parse} if `text` does not match the grammar.
  explicit PermId(std::string_view text);

  static std::optional<PermId> try_parse(std::string_view text);
  static bool is_valid(std::string_view text) noexcept;

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  auto operator<=>(const PermId&) const = default;

 private:
  std::string value_;
};

PermId mint_perm_id(Timestamp clock, std::uint64_t seq);

// QR label payload "rdm://object/<perm_id>".
std::string qr_payload(const PermId& id);
PermId resolve_qr_payload(std::string_view payload);

}  // namespace rdm

template <>
struct std::hash<rdm::PermId> {
  std::size_t operator()(const rdm::PermId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
