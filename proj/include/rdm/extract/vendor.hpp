#pragma once

#include <optional>
#include <string_view>

#include "rdm/bytes.hpp"

namespace rdm {

enum class VendorFormat { VendorA, VendorB, VendorC, Unknown };

std::string_view to_string(VendorFormat v) noexcept;  // "vendorA", ..., "unknown"
// Accepts "vendorA" / "A" / "a" style names; "none" and "unknown" map to Unknown.
std::optional<VendorFormat> vendor_from_string(std::string_view name) noexcept;

// Pure function of the leading bytes. Fewer than 8 bytes is always Unknown
// except for the text format, whose magic is "[System]" after whitespace.
VendorFormat detect_format(ByteView leading_bytes) noexcept;

inline constexpr std::uint8_t kMagicA[8] = {'V', 'N', 'D', 'A', 0x00, 0x01, 0x00, 0x00};
inline constexpr std::uint8_t kMagicB[8] = {'V', 'N', 'D', 'B', 0x00, 0x01, 0x00, 0x00};

}  // namespace rdm
